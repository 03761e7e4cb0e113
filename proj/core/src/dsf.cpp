#include "layoutbench/dsf.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "layoutbench/random.hpp"

namespace layoutbench::dsf {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Dsf:
      return "dsf";
    case Strategy::Geometric:
      return "geometric";
    case Strategy::Random:
      return "random";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  if (name == "dsf") return Strategy::Dsf;
  if (name == "geometric") return Strategy::Geometric;
  if (name == "random") return Strategy::Random;
  return std::nullopt;
}

bool overlaps(const BBox& a, const BBox& b) {
  return intersection_area(a, b) > 0.0;
}

namespace {

bool is_underlay(const Element& e) { return e.cls == ElementClass::Underlay; }
bool is_anchor(const Element& e) {
  return e.cls == ElementClass::Text || e.cls == ElementClass::Logo;
}

// Disjoint-set over element indices.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

void sort_by_area_desc(std::vector<int>& ids, const Layout& layout) {
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    const double aa = layout.elements[a].box.area();
    const double ab = layout.elements[b].box.area();
    if (aa != ab) return aa > ab;
    return a < b;
  });
}

}  // namespace

UnderlayGroups group_by_underlay(const Layout& layout) {
  const auto& els = layout.elements;
  const int n = static_cast<int>(els.size());

  // direct[u] = anchors overlapping underlay u.
  std::vector<std::vector<int>> direct(n);
  DisjointSet sets(n);
  for (int u = 0; u < n; ++u) {
    if (!is_underlay(els[u])) continue;
    for (int a = 0; a < n; ++a) {
      if (is_anchor(els[a]) && overlaps(els[u].box, els[a].box)) {
        direct[u].push_back(a);
      }
    }
    for (std::size_t k = 1; k < direct[u].size(); ++k) {
      sets.unite(direct[u][0], direct[u][k]);
    }
  }

  UnderlayGroups out;
  out.group_of.assign(n, -1);
  std::vector<int> group_of_root(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!is_anchor(els[i])) continue;
    const int root = sets.find(i);
    if (group_of_root[root] < 0) {
      group_of_root[root] = static_cast<int>(out.groups.size());
      out.groups.emplace_back();
    }
    out.group_of[i] = group_of_root[root];
    out.groups[group_of_root[root]].push_back(i);
  }
  out.attached.assign(out.groups.size(), {});

  for (std::size_t g = 0; g < out.groups.size(); ++g) {
    std::vector<int>& list = out.attached[g];
    std::vector<bool> seen(n, false);
    for (int u = 0; u < n; ++u) {
      if (!direct[u].empty() && out.group_of[direct[u][0]] == static_cast<int>(g)) {
        list.push_back(u);
        seen[u] = true;
      }
    }
    // Underlay-below-underlay: walk through underlays that decorate no
    // anchor themselves.
    for (std::size_t head = 0; head < list.size(); ++head) {
      const int from = list[head];
      for (int v = 0; v < n; ++v) {
        if (seen[v] || !is_underlay(els[v]) || !direct[v].empty()) continue;
        if (overlaps(els[from].box, els[v].box)) {
          seen[v] = true;
          list.push_back(v);
        }
      }
    }
    sort_by_area_desc(list, layout);
  }
  return out;
}

DesignSequence form_design_sequence(const Layout& layout) {
  const auto& els = layout.elements;
  const int n = static_cast<int>(els.size());

  std::vector<int> logos;
  std::vector<int> texts;
  for (int i = 0; i < n; ++i) {
    if (els[i].cls == ElementClass::Logo) logos.push_back(i);
    if (els[i].cls == ElementClass::Text) texts.push_back(i);
  }
  std::sort(logos.begin(), logos.end(), [&](int a, int b) {
    const BBox& ba = els[a].box;
    const BBox& bb = els[b].box;
    if (ba.y1 != bb.y1) return ba.y1 < bb.y1;
    if (ba.x1 != bb.x1) return ba.x1 < bb.x1;
    return a < b;
  });
  sort_by_area_desc(texts, layout);

  std::vector<int> queue = logos;
  queue.insert(queue.end(), texts.begin(), texts.end());
  std::vector<int> queue_pos(n, n);
  for (std::size_t k = 0; k < queue.size(); ++k) queue_pos[queue[k]] = static_cast<int>(k);

  const UnderlayGroups groups = group_by_underlay(layout);

  DesignSequence seq;
  seq.strategy = Strategy::Dsf;
  std::vector<bool> emitted(n, false);
  auto emit = [&](int i) {
    emitted[i] = true;
    seq.entries.push_back(els[i]);
  };

  for (int head : queue) {
    if (emitted[head]) continue;
    const int g = groups.group_of[head];
    std::vector<int> members = groups.groups[g];
    std::sort(members.begin(), members.end(),
              [&](int a, int b) { return queue_pos[a] < queue_pos[b]; });
    for (int m : members) {
      if (!emitted[m]) emit(m);
    }
    for (int u : groups.attached[g]) {
      if (!emitted[u]) emit(u);
    }
  }

  std::vector<int> orphans;
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (emitted[i]) continue;
    if (is_underlay(els[i])) {
      orphans.push_back(i);
    } else {
      rest.push_back(i);
    }
  }
  sort_by_area_desc(orphans, layout);
  for (int u : orphans) emit(u);
  // Pads do not occur in ingested layouts; keep them last in index order so
  // the output is still a permutation.
  for (int i : rest) emit(i);
  std::sort(orphans.begin(), orphans.end());
  seq.orphan_underlays = std::move(orphans);
  return seq;
}

DesignSequence order_geometric(const Layout& layout) {
  DesignSequence seq;
  seq.strategy = Strategy::Geometric;
  seq.entries = layout.elements;
  std::stable_sort(seq.entries.begin(), seq.entries.end(),
                   [](const Element& a, const Element& b) {
                     if (a.box.y1 != b.box.y1) return a.box.y1 < b.box.y1;
                     if (a.box.x1 != b.box.x1) return a.box.x1 < b.box.x1;
                     return a.index < b.index;
                   });
  return seq;
}

DesignSequence order_random(const Layout& layout, std::uint64_t seed) {
  DesignSequence seq;
  seq.strategy = Strategy::Random;
  seq.seed = seed;
  seq.entries = layout.elements;
  std::mt19937_64 rng(seed);
  for (std::size_t i = seq.entries.size(); i > 1; --i) {
    const std::uint64_t j = uniform_below(rng, i);
    std::swap(seq.entries[i - 1], seq.entries[j]);
  }
  return seq;
}

DesignSequence order(const Layout& layout, Strategy strategy, std::uint64_t seed) {
  switch (strategy) {
    case Strategy::Dsf:
      return form_design_sequence(layout);
    case Strategy::Geometric:
      return order_geometric(layout);
    case Strategy::Random:
      return order_random(layout, seed);
  }
  throw std::invalid_argument("unknown ordering strategy");
}

DesignSequence fit_length(const DesignSequence& seq, int length) {
  if (length < 1) {
    throw std::invalid_argument("sequence length must be at least 1");
  }
  DesignSequence out = seq;
  const auto k = static_cast<std::size_t>(length);
  if (out.entries.size() > k) {
    out.entries.resize(k);
  }
  while (out.entries.size() < k) {
    out.entries.push_back(Element{ElementClass::Pad, BBox{}, -1});
  }
  out.fitted_length = length;
  return out;
}

Layout to_layout(const DesignSequence& seq, const Layout& source) {
  Layout out;
  out.canvas_id = source.canvas_id;
  out.layout_id = source.layout_id;
  out.canvas_w = source.canvas_w;
  out.canvas_h = source.canvas_h;
  for (const Element& e : seq.entries) {
    if (e.cls == ElementClass::Pad) continue;
    Element copy = e;
    copy.index = static_cast<int>(out.elements.size());
    out.elements.push_back(copy);
  }
  return out;
}

}  // namespace layoutbench::dsf
