#pragma once

#include <gmpxx.h>

#include <string>

namespace pruwalk {

// Exact arbitrary-precision rational; all coefficient arithmetic in the
// toolkit is done in this type. Floating point only enters phase analysis.
using Rat = mpq_class;
using Int = mpz_class;

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
    Rat q(s);
    q.canonicalize();
    return q;
}

inline double rat_to_double(const Rat& q) { return q.get_d(); }

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

}  // namespace pruwalk
