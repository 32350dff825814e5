#ifndef PIWORD_MONOID_IO_HPP
#define PIWORD_MONOID_IO_HPP

#include <string>

#include "piword/monoid.hpp"

namespace piword {

// JSON format:
//   {"name": str, "elements": [str...], "identity": str,
//    "table": [[str...]...]}
// with table[i][j] naming the product of element i by element j.
std::string monoid_to_json(const FiniteMonoid& m);
FiniteMonoid monoid_from_json(const std::string& text);
FiniteMonoid load_monoid_file(const std::string& path);

}  // namespace piword

#endif  // PIWORD_MONOID_IO_HPP
