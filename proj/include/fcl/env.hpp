#pragma once

#include <memory>
#include <string>
#include <unordered_map>

#include "fcl/value.hpp"

namespace fcl {

/// Name-to-value frame with an optional parent; lookup walks the chain,
/// define writes the local frame only.
struct Environment {
    std::unordered_map<std::string, Value> bindings;
    EnvPtr parent;
    bool fc_generated = false; // frame created by fc/pipe to hold internal bindings

    static EnvPtr make(EnvPtr parent = nullptr, bool fc_generated = false) {
        auto env = std::make_shared<Environment>();
        env->parent = std::move(parent);
        env->fc_generated = fc_generated;
        return env;
    }

    const Value* lookup(const std::string& name) const {
        for (const Environment* e = this; e; e = e->parent.get()) {
            auto it = e->bindings.find(name);
            if (it != e->bindings.end()) return &it->second;
        }
        return nullptr;
    }

    bool bound_in_chain(const std::string& name) const { return lookup(name) != nullptr; }

    void define(const std::string& name, Value value) {
        bindings.insert_or_assign(name, std::move(value));
    }
};

} // namespace fcl
