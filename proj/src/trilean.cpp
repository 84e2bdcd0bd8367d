#include "stlobs/trilean.hpp"

#include <string>

namespace stlobs {

Trilean from_flags(bool positive, bool negative) {
  return from_flags(FlagPair(positive, negative));
}

std::string_view to_string(Trilean v) {
  switch (v) {
    case Trilean::T: return "T";
    case Trilean::F: return "F";
    case Trilean::U: return "U";
  }
  return "?";
}

Trilean parse_trilean(std::string_view text) {
  if (text == "T") return Trilean::T;
  if (text == "F") return Trilean::F;
  if (text == "U") return Trilean::U;
  throw std::invalid_argument("not a trilean: '" + std::string(text) + "'");
}

}  // namespace stlobs
