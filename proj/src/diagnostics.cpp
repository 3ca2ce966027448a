#include "fcl/diagnostics.hpp"

#include <iostream>
#include <memory>
#include <vector>

namespace fcl {

namespace {

WarningHandler& current_handler() {
    static WarningHandler handler;
    return handler;
}

} // namespace

void emit_warning(const std::string& message) {
    if (current_handler())
        current_handler()(message);
    else
        std::cerr << "warning: " << message << std::endl;
}

WarningHandler set_warning_handler(WarningHandler handler) {
    WarningHandler previous = std::move(current_handler());
    current_handler() = std::move(handler);
    return previous;
}

WarningCapture::WarningCapture()
    : messages_(std::make_shared<std::vector<std::string>>()) {
    auto sink = messages_;
    previous_ = set_warning_handler([sink](const std::string& m) { sink->push_back(m); });
}

WarningCapture::~WarningCapture() {
    set_warning_handler(std::move(previous_));
}

} // namespace fcl
