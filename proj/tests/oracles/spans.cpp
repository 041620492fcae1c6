#include "oracles/spans.hpp"

#include <set>

namespace oracle {

using mackeylab::SubId;

SpanOracle::SpanOracle(const mackeylab::MackeySystem& sys) : sys_(sys) {
  const auto& g = *sys.group();
  PermSet all = group_of(g);
  elements_.assign(all.begin(), all.end());
  for (SubId h = 0; h < g.subgroup_count(); ++h) {
    subgroups_.push_back(subgroup_perms(g, h));
    ids_[subgroups_.back()] = h;
  }
}

Perm SpanOracle::element(mackeylab::Elem e) const { return sys_.group()->perm(e); }

PermSet SpanOracle::conj(const PermSet& s, const Perm& a) const {
  PermSet out;
  Perm ai = inverse(a);
  for (const auto& x : s) out.insert(oracle::compose(ai, oracle::compose(x, a)));
  return out;
}

SubId SpanOracle::id_of(const PermSet& s) const { return ids_.at(s); }

bool SpanOracle::in_coset(const Perm& x, const Perm& y, SubId k) const {
  return subgroups_[k].count(oracle::compose(inverse(x), y)) > 0;
}

std::vector<RawSpan> SpanOracle::classes(SubId h, std::optional<SubId> k) const {
  std::vector<RawSpan> all;
  for (SubId l = 0; l < subgroups_.size(); ++l) {
    if (!sys_.in_family(l)) continue;
    for (const auto& a : elements_) {
      PermSet la = conj(subgroups_[l], a);
      if (!std::includes(subgroups_[h].begin(), subgroups_[h].end(), la.begin(), la.end())) continue;
      if (!sys_.is_open(h, id_of(la))) continue;
      if (!k) {
        all.push_back({l, a, elements_.front()});
        continue;
      }
      for (const auto& b : elements_) {
        PermSet lb = conj(subgroups_[l], b);
        if (!std::includes(subgroups_[*k].begin(), subgroups_[*k].end(), lb.begin(), lb.end())) continue;
        if (!sys_.is_open(*k, id_of(lb))) continue;
        all.push_back({l, a, b});
      }
    }
  }
  std::vector<RawSpan> reps;
  for (const auto& s : all) {
    bool found = false;
    for (const auto& r : reps)
      if (equivalent(h, k, s, r)) {
        found = true;
        break;
      }
    if (!found) reps.push_back(s);
  }
  return reps;
}

bool SpanOracle::equivalent(SubId h, std::optional<SubId> k, const RawSpan& s, const RawSpan& t) const {
  for (const auto& c : elements_) {
    if (conj(subgroups_[s.middle], c) != subgroups_[t.middle]) continue;
    if (!in_coset(s.a, oracle::compose(c, t.a), h)) continue;
    if (k && !in_coset(s.b, oracle::compose(c, t.b), *k)) continue;
    return true;
  }
  return false;
}

std::vector<RawSpan> SpanOracle::compose(SubId k, const RawSpan& f, const RawSpan& g) const {
  // points of G/U x G/V as pairs of coset representatives, with x b K = y c K
  const PermSet& u = subgroups_[g.middle];
  const PermSet& v = subgroups_[f.middle];
  auto coset = [](const Perm& x, const PermSet& s) {
    PermSet out;
    for (const auto& e : s) out.insert(oracle::compose(x, e));
    return out;
  };
  std::map<std::pair<PermSet, PermSet>, std::pair<Perm, Perm>> points;
  for (const auto& x : elements_)
    for (const auto& y : elements_)
      if (in_coset(oracle::compose(x, g.b), oracle::compose(y, f.a), k)) points.emplace(std::make_pair(coset(x, u), coset(y, v)), std::make_pair(x, y));
  std::set<std::pair<PermSet, PermSet>> seen;
  std::vector<RawSpan> out;
  for (const auto& [key, xy] : points) {
    if (seen.count(key)) continue;
    for (const auto& e : elements_) seen.insert({coset(oracle::compose(e, xy.first), u), coset(oracle::compose(e, xy.second), v)});
    const auto& [x, y] = xy;
    PermSet w;
    PermSet xu = conj(u, inverse(x)), yv = conj(v, inverse(y));
    std::set_intersection(xu.begin(), xu.end(), yv.begin(), yv.end(), std::inserter(w, w.begin()));
    out.push_back({id_of(w), oracle::compose(x, g.a), oracle::compose(y, f.b)});
  }
  return out;
}

std::size_t SpanOracle::class_count(const std::vector<SubId>& x, const std::vector<SubId>& y) const {
  // points of a union: (orbit, coset as a set, a representative)
  struct Point {
    std::size_t orbit;
    PermSet coset;
    Perm rep;
  };
  auto points = [&](const std::vector<SubId>& orbits) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      std::set<PermSet> seen;
      for (const auto& e : elements_) {
        PermSet c;
        for (const auto& h : subgroups_[orbits[i]]) c.insert(oracle::compose(e, h));
        if (seen.insert(c).second) out.push_back({i, c, e});
      }
    }
    return out;
  };
  auto px = points(x), py = points(y);
  auto stab = [&](const std::vector<SubId>& orbits, const Point& p) { return conj(subgroups_[orbits[p.orbit]], inverse(p.rep)); };
  auto moved = [&](const Perm& c, const Point& p, const Point& q) {
    // c . q == p
    if (p.orbit != q.orbit) return false;
    PermSet img;
    for (const auto& e : q.coset) img.insert(oracle::compose(c, e));
    return img == p.coset;
  };
  struct Triple {
    SubId l;
    std::size_t p, q;
  };
  std::vector<Triple> all;
  for (SubId l = 0; l < subgroups_.size(); ++l) {
    if (!sys_.in_family(l)) continue;
    const PermSet& ls = subgroups_[l];
    auto admissible = [&](const std::vector<SubId>& orbits, const Point& p) {
      PermSet st = stab(orbits, p);
      return std::includes(st.begin(), st.end(), ls.begin(), ls.end()) && sys_.is_open(id_of(st), l);
    };
    for (std::size_t p = 0; p < px.size(); ++p) {
      if (!admissible(x, px[p])) continue;
      for (std::size_t q = 0; q < py.size(); ++q)
        if (admissible(y, py[q])) all.push_back({l, p, q});
    }
  }
  std::vector<Triple> reps;
  for (const auto& s : all) {
    bool found = false;
    for (const auto& r : reps) {
      for (const auto& c : elements_)
        if (conj(subgroups_[s.l], c) == subgroups_[r.l] && moved(c, px[s.p], px[r.p]) && moved(c, py[s.q], py[r.q])) {
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found) reps.push_back(s);
  }
  return reps.size();
}

}  // namespace oracle
