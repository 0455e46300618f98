#ifndef TWLAB_MODEL_HPP
#define TWLAB_MODEL_HPP

// Shared vocabulary for the triple-well model: which well a state lives in
// and the parity bookkeeping of the series expansions.

namespace twlab {

enum class Well { central, side };
enum class SeriesParity { even, odd, not_applicable };

inline const char* to_string(Well w) { return w == Well::central ? "central" : "side"; }
inline const char* to_string(SeriesParity p) {
  switch (p) {
    case SeriesParity::even: return "even";
    case SeriesParity::odd: return "odd";
    default: return "n/a";
  }
}

}  // namespace twlab

#endif  // TWLAB_MODEL_HPP
