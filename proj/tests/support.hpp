#pragma once

#include <functional>
#include <string>

#include <doctest.h>

#include "sparsefactor/errors.hpp"
#include "sparsefactor/poly.hpp"

namespace sft {

// Kind of the sf::Error thrown by f; fails the test when nothing is thrown.
inline sf::ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const sf::Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return sf::ErrorKind::InternalError;
}

inline sf::SparsePoly P(const std::string& text, const sf::FieldPtr& F, int n) { return sf::parse_poly(text, F, n); }

}  // namespace sft
