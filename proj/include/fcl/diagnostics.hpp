#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace fcl {

using WarningHandler = std::function<void(const std::string&)>;

/// Routes a warning to the current handler. The default handler writes
/// `warning: <message>` to stderr.
void emit_warning(const std::string& message);

/// Swaps the handler, returning the previous one (pass nullptr to restore the
/// default). Tests use this to capture diagnostics.
WarningHandler set_warning_handler(WarningHandler handler);

/// RAII capture of warnings into a vector.
class WarningCapture {
public:
    WarningCapture();
    ~WarningCapture();
    WarningCapture(const WarningCapture&) = delete;
    WarningCapture& operator=(const WarningCapture&) = delete;

    const std::vector<std::string>& messages() const { return *messages_; }

private:
    std::shared_ptr<std::vector<std::string>> messages_;
    WarningHandler previous_;
};

} // namespace fcl
