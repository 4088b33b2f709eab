#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "optlim/error.hpp"

namespace optlim {

/// Planar diagram code: one 4-tuple of arc labels per crossing, listed
/// counterclockwise starting at the incoming under-strand.
struct PDCode {
  std::vector<std::array<int, 4>> crossings;
};

/// Corner indices into Crossing::regions and Crossing::sides.
enum RegionCorner { J = 0, K = 1, L = 2, M = 3 };
enum SideCorner { A = 0, B = 1, C = 2, D = 3 };

/// Crossing in the normal form with both strands pointing down.
/// regions = (j, k, l, m): below, right, above, left.
/// sides = (a, b, c, d): lower-left, lower-right, upper-right, upper-left.
/// Strands run c -> a and d -> b; sign is +1 when c -> a is the over-strand.
struct Crossing {
  int sign = 1;
  std::array<int, 4> regions{};
  std::array<int, 4> sides{};
};

/// Connected oriented diagram. Region and side ids are 0-based indices into
/// the name lists.
struct LinkDiagram {
  std::vector<Crossing> crossings;
  std::vector<std::string> region_names;
  std::vector<std::string> side_names;
  int components = 0;

  int num_crossings() const { return int(crossings.size()); }
  int num_regions() const { return int(region_names.size()); }
  int num_sides() const { return int(side_names.size()); }
};

struct ValidationReport {
  int C = 0, n = 0, g = 0, components = 0;
  int kinks = 0;
  std::vector<int> kinked_crossings;
  bool euler_ok = false;            // n == C + 2 and g == 2C
  bool sides_two_regions = false;   // both ends of every side see the same region pair
  bool corners_consistent = false;  // a,b touch j; c,d touch l; j,l never share a side
};

namespace detail {

[[noreturn]] inline void pd_fail(const std::string& msg) {
  throw InputError("PD code: " + msg);
}

// The two sides bordering each region corner, by side corner index.
// Side a separates j|m, b separates j|k, c separates k|l, d separates l|m.
inline constexpr std::array<std::array<int, 2>, 4> kSideRegions{{
    {J, M}, {J, K}, {K, L}, {L, M}}};

inline int find_root(std::vector<int>& p, int x) {
  while (p[x] != x) x = p[x] = p[p[x]];
  return x;
}

// Traces strands c -> a, d -> b through crossings. Returns the component index
// of every side, or throws when a side does not have exactly one head and one
// tail.
inline std::vector<int> trace_components(const LinkDiagram& d, int* count) {
  const int g = d.num_sides();
  std::vector<int> next(g, -1), heads(g, 0), tails(g, 0);
  for (const auto& x : d.crossings) {
    for (int s : x.sides)
      if (s < 0 || s >= g) throw InputError("side id out of range");
    ++tails[x.sides[A]];
    ++tails[x.sides[B]];
    ++heads[x.sides[C]];
    ++heads[x.sides[D]];
    next[x.sides[C]] = x.sides[A];
    next[x.sides[D]] = x.sides[B];
  }
  for (int s = 0; s < g; ++s)
    if (heads[s] != 1 || tails[s] != 1)
      throw InputError("side " + d.side_names[s] +
                       " must enter exactly one crossing and leave exactly one");
  std::vector<int> comp(g, -1);
  int c = 0;
  for (int s = 0; s < g; ++s) {
    if (comp[s] >= 0) continue;
    for (int t = s; comp[t] < 0; t = next[t]) comp[t] = c;
    ++c;
  }
  if (count) *count = c;
  return comp;
}

inline bool crossings_connected(const LinkDiagram& d) {
  const int C = d.num_crossings();
  if (C == 0) return false;
  std::vector<int> parent(C);
  std::iota(parent.begin(), parent.end(), 0);
  std::map<int, int> first;
  for (int i = 0; i < C; ++i)
    for (int s : d.crossings[i].sides) {
      auto [it, fresh] = first.emplace(s, i);
      if (!fresh) parent[find_root(parent, i)] = find_root(parent, it->second);
    }
  for (int i = 0; i < C; ++i)
    if (find_root(parent, i) != find_root(parent, 0)) return false;
  return true;
}

}  // namespace detail

/// Parses "X(a,b,c,d) X(...)" (whitespace and/or comma separated). Labels are
/// renumbered 1..2C preserving their order.
inline PDCode parse_pd(std::string_view text) {
  PDCode pd;
  size_t i = 0;
  auto skip_sep = [&] {
    while (i < text.size() && (std::isspace((unsigned char)text[i]) || text[i] == ','))
      ++i;
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  };
  skip_sep();
  while (i < text.size()) {
    if (text[i] != 'X' && text[i] != 'x')
      detail::pd_fail("unexpected character '" + std::string(1, text[i]) + "'");
    ++i;
    skip_ws();
    if (i >= text.size() || text[i] != '(') detail::pd_fail("expected '(' after X");
    ++i;
    std::vector<long> labels;
    for (;;) {
      skip_ws();
      size_t start = i;
      while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
      if (start == i) detail::pd_fail("expected a positive integer label");
      if (i - start > 9) detail::pd_fail("label too large");
      labels.push_back(std::stol(std::string(text.substr(start, i - start))));
      if (labels.back() <= 0) detail::pd_fail("labels must be positive");
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      detail::pd_fail("malformed tuple");
    }
    if (labels.size() != 4)
      detail::pd_fail("tuple arity " + std::to_string(labels.size()) + " != 4");
    pd.crossings.push_back({int(labels[0]), int(labels[1]), int(labels[2]), int(labels[3])});
    skip_sep();
  }
  if (pd.crossings.empty()) detail::pd_fail("empty input");

  std::map<int, int> count;
  for (const auto& t : pd.crossings)
    for (int l : t) ++count[l];
  for (auto [label, c] : count)
    if (c != 2)
      detail::pd_fail("label " + std::to_string(label) + " appears " + std::to_string(c) +
                      " times, expected 2");
  std::map<int, int> rank;
  int next = 1;
  for (auto& kv : count) rank[kv.first] = next++;
  for (auto& t : pd.crossings)
    for (int& l : t) l = rank[l];
  return pd;
}

/// Builds the oriented diagram: faces by walking the rotation system,
/// orientation from the incoming-under rule, corners per the normal form.
inline LinkDiagram build_diagram(const PDCode& pd) {
  const int C = int(pd.crossings.size());
  if (C == 0) detail::pd_fail("no crossings");
  const int g = 2 * C;
  for (const auto& t : pd.crossings)
    for (int l : t)
      if (l < 1 || l > g) detail::pd_fail("labels must be normalized to 1..2C");

  // Endpoints of each arc as (crossing, position).
  std::vector<std::vector<std::pair<int, int>>> ends(g + 1);
  for (int x = 0; x < C; ++x)
    for (int p = 0; p < 4; ++p) ends[pd.crossings[x][p]].push_back({x, p});
  for (int l = 1; l <= g; ++l)
    if (ends[l].size() != 2) detail::pd_fail("label " + std::to_string(l) + " not used twice");
  auto other = [&](int x, int p) {
    const auto& e = ends[pd.crossings[x][p]];
    return e[0] == std::pair{x, p} ? e[1] : e[0];
  };

  {
    std::vector<int> parent(C);
    std::iota(parent.begin(), parent.end(), 0);
    for (int l = 1; l <= g; ++l)
      parent[detail::find_root(parent, ends[l][0].first)] =
          detail::find_root(parent, ends[l][1].first);
    for (int x = 0; x < C; ++x)
      if (detail::find_root(parent, x) != detail::find_root(parent, 0))
        throw InputError("diagram is disconnected");
  }

  // Orientation. over_from_1[x]: the over-strand enters at position 1.
  std::vector<std::optional<bool>> over_from_1(C);
  std::set<std::pair<int, int>> visited;
  int components = 0;
  for (int x0 = 0; x0 < C; ++x0)
    for (int p0 = 0; p0 < 4; ++p0) {
      if (visited.count({x0, p0})) continue;
      ++components;
      std::vector<std::pair<int, int>> entries;
      int x = x0, p = p0;
      do {
        entries.push_back({x, p});
        visited.insert({x, p});
        visited.insert({x, (p + 2) % 4});
        std::tie(x, p) = other(x, (p + 2) % 4);
      } while (!(x == x0 && p == p0));

      bool forward_under = false, backward_under = false;
      for (auto [cx, cp] : entries) {
        forward_under |= cp == 0;
        backward_under |= cp == 2;
      }
      if (forward_under && backward_under)
        throw InputError("inconsistent orientation trace: a strand enters an "
                         "under-crossing from both ends");
      bool reverse = backward_under;
      if (!forward_under && !backward_under) {
        // Component only passes over: orient along increasing labels.
        std::vector<int> labels;
        for (auto [cx, cp] : entries) labels.push_back(pd.crossings[cx][cp]);
        std::sort(labels.begin(), labels.end());
        auto succ = [&](int l) {
          auto it = std::upper_bound(labels.begin(), labels.end(), l);
          return it == labels.end() ? labels.front() : *it;
        };
        auto [cx, cp] = entries.front();
        const int in = pd.crossings[cx][cp], out = pd.crossings[cx][(cp + 2) % 4];
        reverse = succ(in) != out;
      }
      for (auto [cx, cp] : entries) {
        const int q = reverse ? (cp + 2) % 4 : cp;
        if (q == 1) over_from_1[cx] = true;
        if (q == 3) over_from_1[cx] = false;
      }
    }

  // Faces: corner (x, s) lies between positions s and s+1.
  std::vector<std::array<int, 4>> face(C, {-1, -1, -1, -1});
  int nf = 0;
  for (int x0 = 0; x0 < C; ++x0)
    for (int s0 = 0; s0 < 4; ++s0) {
      if (face[x0][s0] >= 0) continue;
      int x = x0, s = s0;
      while (face[x][s] < 0) {
        face[x][s] = nf;
        std::tie(x, s) = other(x, (s + 1) % 4);
      }
      ++nf;
    }
  if (nf != C + 2)
    throw InputError("PD code is not planar: " + std::to_string(nf) + " faces for " +
                     std::to_string(C) + " crossings");

  LinkDiagram d;
  d.components = components;
  for (int r = 0; r < nf; ++r) d.region_names.push_back(std::to_string(r + 1));
  for (int l = 1; l <= g; ++l) d.side_names.push_back(std::to_string(l));
  for (int x = 0; x < C; ++x) {
    const auto& t = pd.crossings[x];
    const auto& f = face[x];
    Crossing c;
    if (*over_from_1[x]) {  // over-strand d -> b
      c.sign = -1;
      c.sides = {t[2] - 1, t[3] - 1, t[0] - 1, t[1] - 1};
      c.regions = {f[2], f[3], f[0], f[1]};
    } else {  // over-strand c -> a
      c.sign = 1;
      c.sides = {t[1] - 1, t[2] - 1, t[3] - 1, t[0] - 1};
      c.regions = {f[1], f[2], f[3], f[0]};
    }
    d.crossings.push_back(c);
  }
  return d;
}

inline LinkDiagram diagram_from_pd(std::string_view text) {
  return build_diagram(parse_pd(text));
}

inline ValidationReport validate(const LinkDiagram& d) {
  ValidationReport r;
  r.C = d.num_crossings();
  r.n = d.num_regions();
  r.g = d.num_sides();
  r.euler_ok = r.C > 0 && r.n == r.C + 2 && r.g == 2 * r.C;
  try {
    detail::trace_components(d, &r.components);
  } catch (const InputError&) {
    r.components = 0;
  }
  for (int i = 0; i < r.C; ++i) {
    const auto& s = d.crossings[i].sides;
    if (s[A] == s[B] || s[B] == s[C] || s[C] == s[D] || s[D] == s[A]) {
      ++r.kinks;
      r.kinked_crossings.push_back(i);
    }
  }

  std::map<int, std::vector<std::array<int, 2>>> seen;
  for (const auto& x : d.crossings)
    for (int c = 0; c < 4; ++c) {
      auto pair = std::array<int, 2>{x.regions[detail::kSideRegions[c][0]],
                                     x.regions[detail::kSideRegions[c][1]]};
      std::sort(pair.begin(), pair.end());
      seen[x.sides[c]].push_back(pair);
    }
  // Seen from the far end too: a, b must border j and c, d must border l, and
  // no corner side may separate j from l.
  r.corners_consistent = true;
  for (const auto& x : d.crossings) {
    const int j = x.regions[J], l = x.regions[L];
    for (int c = 0; c < 4; ++c) {
      const int want = c <= B ? j : l;
      for (const auto& pr : seen[x.sides[c]]) {
        if (pr[0] != want && pr[1] != want) r.corners_consistent = false;
        if (j != l && ((pr[0] == j && pr[1] == l) || (pr[0] == l && pr[1] == j)))
          r.corners_consistent = false;
      }
    }
  }
  r.sides_two_regions = int(seen.size()) == r.g;
  for (auto& [s, pairs] : seen)
    if (pairs.size() != 2 || pairs[0] != pairs[1]) r.sides_two_regions = false;
  return r;
}

/// Regions bordering side s (as seen from its first endpoint).
inline std::array<int, 2> side_regions(const LinkDiagram& d, int s) {
  for (const auto& x : d.crossings)
    for (int c = 0; c < 4; ++c)
      if (x.sides[c] == s)
        return {x.regions[detail::kSideRegions[c][0]], x.regions[detail::kSideRegions[c][1]]};
  throw InputError("unknown side");
}

/// Side ids ordered along the orientation, component by component, starting
/// each component at its lowest-id side.
inline std::vector<int> sides_along_orientation(const LinkDiagram& d) {
  const int g = d.num_sides();
  std::vector<int> next(g, -1);
  for (const auto& x : d.crossings) {
    next[x.sides[C]] = x.sides[A];
    next[x.sides[D]] = x.sides[B];
  }
  std::vector<int> order;
  std::vector<char> done(g, 0);
  for (int s = 0; s < g; ++s) {
    if (done[s]) continue;
    for (int t = s; !done[t]; t = next[t]) {
      done[t] = 1;
      order.push_back(t);
    }
  }
  return order;
}

/// PD code whose labels increase along each component.
inline std::string render_pd(const LinkDiagram& d) {
  const auto order = sides_along_orientation(d);
  std::vector<int> label(d.num_sides());
  for (size_t i = 0; i < order.size(); ++i) label[order[i]] = int(i) + 1;
  std::string out;
  for (const auto& x : d.crossings) {
    std::array<int, 4> t;
    const auto& s = x.sides;
    if (x.sign > 0)
      t = {label[s[D]], label[s[A]], label[s[B]], label[s[C]]};
    else
      t = {label[s[C]], label[s[D]], label[s[A]], label[s[B]]};
    if (!out.empty()) out += ' ';
    out += "X(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
           std::to_string(t[2]) + "," + std::to_string(t[3]) + ")";
  }
  return out;
}

/// True if some bijection of crossings, regions and sides carries one
/// diagram onto the other, preserving signs and every corner position.
inline bool isomorphic(const LinkDiagram& a, const LinkDiagram& b) {
  const int C = a.num_crossings();
  if (C != b.num_crossings() || a.num_regions() != b.num_regions() ||
      a.num_sides() != b.num_sides())
    return false;
  if (C == 0) return true;
  // Incidences (crossing, corner) per side.
  auto incid = [](const LinkDiagram& d) {
    std::vector<std::vector<std::pair<int, int>>> inc(d.num_sides());
    for (int i = 0; i < d.num_crossings(); ++i)
      for (int c = 0; c < 4; ++c) inc[d.crossings[i].sides[c]].push_back({i, c});
    return inc;
  };
  const auto ia = incid(a), ib = incid(b);
  for (int start = 0; start < C; ++start) {
    std::vector<int> xmap(C, -1), rmap(a.num_regions(), -1), smap(a.num_sides(), -1);
    std::vector<int> rinv(b.num_regions(), -1), sinv(b.num_sides(), -1), xinv(C, -1);
    bool ok = true;
    auto bind = [&](std::vector<int>& f, std::vector<int>& inv, int u, int v) {
      if (f[u] < 0 && inv[v] < 0) {
        f[u] = v;
        inv[v] = u;
        return true;
      }
      return f[u] == v && inv[v] == u;
    };
    std::queue<int> q;
    xmap[0] = start;
    xinv[start] = 0;
    q.push(0);
    while (ok && !q.empty()) {
      const int x = q.front();
      q.pop();
      const auto& ca = a.crossings[x];
      const auto& cb = b.crossings[xmap[x]];
      if (ca.sign != cb.sign) {
        ok = false;
        break;
      }
      for (int c = 0; c < 4 && ok; ++c) {
        ok = bind(rmap, rinv, ca.regions[c], cb.regions[c]) &&
             bind(smap, sinv, ca.sides[c], cb.sides[c]);
        if (!ok) break;
        const auto& ea = ia[ca.sides[c]];
        const auto& eb = ib[cb.sides[c]];
        for (auto [y, cy] : ea) {
          auto it = std::find_if(eb.begin(), eb.end(), [&](auto e) { return e.second == cy; });
          if (it == eb.end()) {
            ok = false;
            break;
          }
          const bool fresh = xmap[y] < 0;
          if (!bind(xmap, xinv, y, it->first)) {
            ok = false;
            break;
          }
          if (fresh) q.push(y);
        }
      }
    }
    if (ok && std::find(xmap.begin(), xmap.end(), -1) == xmap.end()) return true;
  }
  return false;
}

/// {"crossings":[{"sign":1,"regions":[j,k,l,m],"sides":[a,b,c,d]}],"n":..,"g":..}
/// with 1-based ids. Optional "region_names"/"side_names".
inline nlohmann::json diagram_to_json(const LinkDiagram& d) {
  nlohmann::json j;
  j["crossings"] = nlohmann::json::array();
  for (const auto& x : d.crossings) {
    nlohmann::json c;
    c["sign"] = x.sign;
    c["regions"] = {x.regions[0] + 1, x.regions[1] + 1, x.regions[2] + 1, x.regions[3] + 1};
    c["sides"] = {x.sides[0] + 1, x.sides[1] + 1, x.sides[2] + 1, x.sides[3] + 1};
    j["crossings"].push_back(c);
  }
  j["n"] = d.num_regions();
  j["g"] = d.num_sides();
  j["region_names"] = d.region_names;
  j["side_names"] = d.side_names;
  return j;
}

inline LinkDiagram diagram_from_json(const nlohmann::json& j) {
  LinkDiagram d;
  try {
    const auto& cs = j.at("crossings");
    if (!cs.is_array() || cs.empty()) throw InputError("diagram JSON: no crossings");
    const int C = int(cs.size());
    const int n = j.contains("n") ? j.at("n").get<int>() : C + 2;
    const int g = j.contains("g") ? j.at("g").get<int>() : 2 * C;
    for (const auto& c : cs) {
      Crossing x;
      x.sign = c.at("sign").get<int>();
      if (x.sign != 1 && x.sign != -1) throw InputError("diagram JSON: sign must be +1 or -1");
      auto r = c.at("regions").get<std::vector<int>>();
      auto s = c.at("sides").get<std::vector<int>>();
      if (r.size() != 4 || s.size() != 4)
        throw InputError("diagram JSON: regions and sides need 4 entries");
      for (int i = 0; i < 4; ++i) {
        if (r[i] < 1 || r[i] > n || s[i] < 1 || s[i] > g)
          throw InputError("diagram JSON: id out of range");
        x.regions[i] = r[i] - 1;
        x.sides[i] = s[i] - 1;
      }
      d.crossings.push_back(x);
    }
    if (j.contains("region_names"))
      d.region_names = j.at("region_names").get<std::vector<std::string>>();
    else
      for (int i = 1; i <= n; ++i) d.region_names.push_back(std::to_string(i));
    if (j.contains("side_names"))
      d.side_names = j.at("side_names").get<std::vector<std::string>>();
    else
      for (int i = 1; i <= g; ++i) d.side_names.push_back(std::to_string(i));
    if (int(d.region_names.size()) != n || int(d.side_names.size()) != g)
      throw InputError("diagram JSON: name list length mismatch");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("diagram JSON: ") + e.what());
  }
  detail::trace_components(d, &d.components);
  if (!detail::crossings_connected(d)) throw InputError("diagram is disconnected");
  const auto rep = validate(d);
  if (!rep.euler_ok) throw InputError("diagram JSON: region/side counts violate n = C+2, g = 2C");
  if (!rep.sides_two_regions)
    throw InputError("diagram JSON: side/region incidences are inconsistent");
  return d;
}

}  // namespace optlim
