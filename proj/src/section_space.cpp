#include "gbspectra/section_space.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace gbspectra {

namespace {

const double kPi = std::acos(-1.0);

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

void SectionSpace::validate(int n) const {
  if (kind == SpaceKind::Polynomial) return;
  if (!(alpha > 0.0))
    throw std::invalid_argument("section space: alpha must be positive, got alpha=" +
                                std::to_string(alpha));
  if (kind != SpaceKind::Trigonometric) return;

  const double ph = phase(n);
  if (ph < kPi) return;

  std::ostringstream msg;
  msg << "trigonometric section space: per-element phase " << ph << " must be < pi";
  if (mode == RefinementMode::Nested) {
    const int n_min = static_cast<int>(std::floor(alpha / kPi)) + 1;
    msg << "; with alpha=" << alpha << " the smallest admissible n is " << n_min;
  } else {
    msg << "; non-nested refinement needs alpha < pi (largest admissible alpha* = "
        << kPi << "), got alpha=" << alpha;
  }
  throw std::invalid_argument(msg.str());
}

SectionSpace parse_space(const std::string& spec) {
  if (spec == "poly" || spec == "polynomial") return SectionSpace{};

  const auto parts = split(spec, ':');
  if (parts.size() != 3)
    throw std::invalid_argument(
        "space spec must be 'poly', 'trig:<alpha>:<nested|nonnested>' or "
        "'hyp:<alpha>:<nested|nonnested>', got '" +
        spec + "'");

  SectionSpace space;
  if (parts[0] == "trig")
    space.kind = SpaceKind::Trigonometric;
  else if (parts[0] == "hyp")
    space.kind = SpaceKind::Hyperbolic;
  else
    throw std::invalid_argument("unknown section-space kind '" + parts[0] + "' in '" + spec +
                                "'");

  try {
    std::size_t used = 0;
    space.alpha = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad alpha '" + parts[1] + "' in space spec '" + spec + "'");
  }

  if (parts[2] == "nested")
    space.mode = RefinementMode::Nested;
  else if (parts[2] == "nonnested")
    space.mode = RefinementMode::NonNested;
  else
    throw std::invalid_argument("refinement mode must be 'nested' or 'nonnested', got '" +
                                parts[2] + "' in '" + spec + "'");

  if (!(space.alpha > 0.0))
    throw std::invalid_argument("alpha must be positive in space spec '" + spec + "'");
  return space;
}

std::string format_space(const SectionSpace& space) {
  if (space.is_polynomial()) return "poly";
  std::ostringstream os;
  os << kind_label(space.kind) << ':' << space.alpha << ':' << mode_label(space);
  return os.str();
}

std::string kind_label(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Polynomial: return "poly";
    case SpaceKind::Hyperbolic: return "hyp";
    case SpaceKind::Trigonometric: return "trig";
  }
  return "?";
}

std::string mode_label(const SectionSpace& space) {
  if (space.is_polynomial()) return "-";
  return space.mode == RefinementMode::Nested ? "nested" : "nonnested";
}

}  // namespace gbspectra
