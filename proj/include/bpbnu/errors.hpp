#pragma once

#include <stdexcept>
#include <string>

namespace bpbnu {

/// Two values live on different measure spaces (or have different sizes).
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A caller-supplied argument violates an operation's precondition.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed serialized input (JSON shape, field mismatch, ...).
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A bound that the correction pipeline relies on did not hold. `tag()` names
/// the displayed inequality (e.g. "sum-G", "varphi-k-phi-k").
class invariant_error : public std::logic_error {
public:
    invariant_error(std::string tag, const std::string& what)
        : std::logic_error("[" + tag + "] " + what), tag_(std::move(tag)) {}

    const std::string& tag() const noexcept { return tag_; }

private:
    std::string tag_;
};

} // namespace bpbnu
