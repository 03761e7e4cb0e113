#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "layoutbench/geometry.hpp"

namespace layoutbench::dsf {

enum class Strategy { Dsf, Geometric, Random };

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct DesignSequence {
  std::vector<Element> entries;
  Strategy strategy = Strategy::Dsf;
  // Only meaningful for Strategy::Random.
  std::uint64_t seed = 0;
  std::optional<int> fitted_length;
  // Source indices of underlays that overlap no text or logo, directly or
  // through other underlays. They trail the sequence.
  std::vector<int> orphan_underlays;
};

/// Partition of the non-underlay elements into groups that share an
/// overlapping underlay, with each group's underlays attached.
///
/// `groups[g]` holds element indices in ascending order; groups are ordered
/// by their smallest member. `attached[g]` lists underlay indices sorted by
/// area descending, ties by index. An underlay that touches no text or logo
/// itself but overlaps (through a chain of such underlays) an underlay of
/// group g is attached to g as well; if it reaches several groups it is
/// listed under each of them.
struct UnderlayGroups {
  std::vector<std::vector<int>> groups;
  std::vector<std::vector<int>> attached;
  // group_of[i] is the group of non-underlay element i, -1 for underlays.
  std::vector<int> group_of;
};

/// "Overlaid" means a strictly positive intersection area.
bool overlaps(const BBox& a, const BBox& b);

UnderlayGroups group_by_underlay(const Layout& layout);

/// Design sequence formation: logos by (y1, x1) ascending, then texts by
/// area descending, each pulling in its whole underlay group followed by the
/// group's underlays. Orphan underlays are appended by area descending.
DesignSequence form_design_sequence(const Layout& layout);

/// All elements sorted by (y1, x1) ascending, ties by index.
DesignSequence order_geometric(const Layout& layout);

/// Seeded Fisher-Yates shuffle driven by std::mt19937_64 with rejection
/// sampling for bounded draws, so the permutation for a given seed is the
/// same on every platform.
DesignSequence order_random(const Layout& layout, std::uint64_t seed);

DesignSequence order(const Layout& layout, Strategy strategy,
                     std::uint64_t seed = 0);

/// Truncates to the first `length` entries or pads with zero-box Pad
/// elements (index -1). Throws std::invalid_argument for length < 1.
DesignSequence fit_length(const DesignSequence& seq, int length);

/// Rebuilds a layout from a sequence, dropping pads. Element order follows
/// the sequence and indices are renumbered 0..n-1.
Layout to_layout(const DesignSequence& seq, const Layout& source);

}  // namespace layoutbench::dsf
