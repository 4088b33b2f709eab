#pragma once

#include <map>
#include <string>

#include "optlim/diagram.hpp"

namespace optlim {

/// Twist knot T_n (n >= 1) with n+3 crossings. Regions are named
/// c, d, e, w0..w{n+1}; sides a, b, x0..x{n+1}, y0..y{n+1}. Two clasp
/// crossings, then n+1 negative twist crossings.
inline LinkDiagram twist_diagram(int n) {
  if (n < 1) throw InputError("twist knot index must be >= 1");
  LinkDiagram d;
  d.region_names = {"c", "d", "e"};
  for (int k = 0; k <= n + 1; ++k) d.region_names.push_back("w" + std::to_string(k));
  d.side_names = {"a", "b"};
  for (int k = 0; k <= n + 1; ++k) d.side_names.push_back("x" + std::to_string(k));
  for (int k = 0; k <= n + 1; ++k) d.side_names.push_back("y" + std::to_string(k));

  const int c = 0, dd = 1, e = 2;
  auto w = [](int k) { return 3 + k; };
  const int a = 0, b = 1;
  auto x = [](int k) { return 2 + k; };
  auto y = [n](int k) { return 2 + (n + 2) + k; };

  const bool odd = n % 2 == 1;
  if (odd) {
    d.crossings.push_back({+1, {w(0), c, w(n + 1), dd}, {b, y(0), y(n + 1), a}});
    d.crossings.push_back({+1, {w(n + 1), e, w(0), dd}, {a, x(n + 1), x(0), b}});
  } else {
    d.crossings.push_back({-1, {dd, w(0), c, w(n + 1)}, {a, b, y(0), y(n + 1)}});
    d.crossings.push_back({-1, {e, w(0), dd, w(n + 1)}, {x(n + 1), x(0), b, a}});
  }
  for (int k = 1; k <= n + 1; ++k) {
    if ((k % 2 == 1) == odd)
      d.crossings.push_back({-1, {e, w(k), c, w(k - 1)}, {x(k - 1), x(k), y(k), y(k - 1)}});
    else
      d.crossings.push_back({-1, {c, w(k - 1), e, w(k)}, {y(k), y(k - 1), x(k - 1), x(k)}});
  }
  d.components = 1;
  return d;
}

/// Copy of d with regions permuted (new id = perm[old id]) and renamed.
inline LinkDiagram relabel_regions(const LinkDiagram& d, const std::vector<int>& perm,
                                   const std::vector<std::string>& names) {
  LinkDiagram out = d;
  for (auto& x : out.crossings)
    for (int& r : x.regions) r = perm[r];
  out.region_names = names;
  return out;
}

/// Copy of d with sides renumbered 1..g along the orientation.
inline LinkDiagram renumber_sides(const LinkDiagram& d) {
  const auto order = sides_along_orientation(d);
  std::vector<int> id(d.num_sides());
  for (size_t i = 0; i < order.size(); ++i) id[order[i]] = int(i);
  LinkDiagram out = d;
  for (auto& x : out.crossings)
    for (int& s : x.sides) s = id[s];
  out.side_names.clear();
  for (int i = 1; i <= d.num_sides(); ++i) out.side_names.push_back("z" + std::to_string(i));
  return out;
}

/// Built-in diagrams: "4_1", "5_2", "T1".."T5".
inline LinkDiagram builtin(const std::string& name) {
  if (name == "4_1") {
    // T1 with regions renamed so the potential reads exactly as the classical
    // figure-eight four-brace expression in w1..w6.
    // c->w2, d->w3, e->w5, w0->w4, w1->w6, w2->w1
    auto d = relabel_regions(twist_diagram(1), {1, 2, 4, 3, 5, 0},
                             {"w1", "w2", "w3", "w4", "w5", "w6"});
    return renumber_sides(d);
  }
  if (name == "5_2") return twist_diagram(2);
  if (name.size() == 2 && name[0] == 'T' && name[1] >= '1' && name[1] <= '5')
    return twist_diagram(name[1] - '0');
  throw InputError("unknown builtin diagram '" + name + "' (known: 4_1, 5_2, T1..T5)");
}

}  // namespace optlim
