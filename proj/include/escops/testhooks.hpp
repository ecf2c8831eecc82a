#pragma once

#include <atomic>

namespace escops::testhooks {

// Deliberate-fault switch used by the verification suites: flips the sign
// applied when orienting a generator, so every Arnold relator acquires a
// nonzero normal form. Never set outside tests and the CLI fault mode.
inline std::atomic<bool> flip_symmetry_sign{false};

}  // namespace escops::testhooks
