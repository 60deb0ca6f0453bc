#pragma once

#include <string>

namespace gbspectra {

enum class SpaceKind { Polynomial, Hyperbolic, Trigonometric };

/// How the section-space frequency behaves under knot refinement.
/// Nested keeps the global frequency alpha fixed, so the per-element phase
/// alpha/n shrinks as n grows and the space converges to the polynomial one.
/// NonNested scales the frequency with n (per-element phase alpha constant),
/// which keeps one section space per element independent of n.
enum class RefinementMode { Nested, NonNested };

struct SectionSpace {
  SpaceKind kind = SpaceKind::Polynomial;
  double alpha = 0.0;  ///< frequency parameter; unused for Polynomial
  RefinementMode mode = RefinementMode::Nested;

  /// Per-element frequency for an n-element uniform mesh.
  [[nodiscard]] double frequency(int n) const {
    return mode == RefinementMode::Nested ? alpha : alpha * static_cast<double>(n);
  }

  /// Per-element phase (frequency times element width 1/n).
  [[nodiscard]] double phase(int n) const { return frequency(n) / static_cast<double>(n); }

  [[nodiscard]] bool is_polynomial() const { return kind == SpaceKind::Polynomial; }

  /// Checks the admissibility of the space on an n-element mesh.
  /// Trigonometric sections need per-element phase < pi (the generalized hat
  /// degenerates at pi); throws std::invalid_argument with the minimal
  /// admissible n / maximal admissible alpha spelled out. Hyperbolic and
  /// trigonometric spaces require alpha > 0.
  void validate(int n) const;
};

/// Parse a space spec string: "poly", "trig:<alpha>:<nested|nonnested>",
/// "hyp:<alpha>:<nested|nonnested>". Throws std::invalid_argument on bad
/// input.
SectionSpace parse_space(const std::string& spec);

/// Inverse of parse_space; used in reports and filenames.
std::string format_space(const SectionSpace& space);

/// Short kind label: "poly" | "hyp" | "trig".
std::string kind_label(SpaceKind kind);

/// Mode label: "nested" | "nonnested" ("-" for polynomial spaces).
std::string mode_label(const SectionSpace& space);

}  // namespace gbspectra
