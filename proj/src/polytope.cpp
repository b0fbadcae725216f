// Copyright 2026 The evplace Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evplace/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>

namespace evplace {

namespace {

using boost::multiprecision::cpp_int;

// Bitset over the processed constraints / input points.
using Bits = std::vector<std::uint64_t>;

Bits make_bits(std::size_t n) { return Bits((n + 63) / 64, 0); }

void set_bit(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

Bits bits_and(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] & b[i];
  return out;
}

bool bits_subset(const Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] & ~b[i]) return false;
  }
  return true;
}

// Scales a rational vector to integer entries with gcd 1; zero stays zero.
void make_primitive(RationalVector& v) {
  cpp_int l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    l = boost::multiprecision::lcm(l, denominator(v[i]));
  }
  cpp_int g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v[i] *= l;
    g = boost::multiprecision::gcd(g, numerator(v[i]));
  }
  if (g > 1) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] /= g;
  }
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

RationalVector lift(const Eigen::VectorXi& p) {
  RationalVector c(p.size() + 1);
  c[0] = 1;
  for (Eigen::Index j = 0; j < p.size(); ++j) c[j + 1] = p[j];
  return c;
}

int rational_rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const Eigen::Index cols = rows[0].size();
  int rank = 0;
  Eigen::Index col = 0;
  for (std::size_t row = 0; row < rows.size() && col < cols; ++col) {
    std::size_t pivot = row;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[row], rows[pivot]);
    for (std::size_t r = row + 1; r < rows.size(); ++r) {
      if (!rows[r][col].is_zero()) {
        Rational f = rows[r][col] / rows[row][col];
        for (Eigen::Index c = col; c < cols; ++c) {
          rows[r][c] -= f * rows[row][c];
        }
      }
    }
    ++row;
    ++rank;
  }
  return rank;
}

struct Ray {
  RationalVector v;
  Bits zero;
};

bool lex_less(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

bool coeffs_less(const HRepRow& a, const HRepRow& b) {
  for (Eigen::Index i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] != b.coeffs[i]) return a.coeffs[i] < b.coeffs[i];
  }
  return a.rhs < b.rhs;
}

long long to_ll(const Rational& r) {
  if (denominator(r) != 1) {
    throw std::logic_error("expected integer coefficient");
  }
  cpp_int n = numerator(r);
  if (n > std::numeric_limits<long long>::max() ||
      n < std::numeric_limits<long long>::min()) {
    throw std::overflow_error("hull coefficient out of range");
  }
  return n.convert_to<long long>();
}

}  // namespace

int PlanIndexMap::column(std::string_view break_id, ChargingMode mode) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i].first == break_id && columns[i].second == mode) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

PlanIndexMap PlanIndexMap::for_driver(const Driver& driver) {
  PlanIndexMap map;
  for (const Break& b : driver.breaks) {
    if (!b.chargeable) continue;
    for (ChargingMode m : kAllModes) map.columns.emplace_back(b.id, m);
  }
  return map;
}

Eigen::VectorXi characteristic_vector(const ChargingPlan& plan,
                                      const PlanIndexMap& index_map) {
  Eigen::VectorXi q = Eigen::VectorXi::Zero(index_map.dimension());
  for (const auto& [break_id, mode] : plan.operations) {
    int col = index_map.column(break_id, mode);
    if (col < 0) {
      throw std::invalid_argument("plan operation at " + break_id +
                                  " is not indexed");
    }
    q[col] = 1;
  }
  return q;
}

bool HRep::satisfied_by(const Eigen::VectorXi& q) const {
  for (const HRepRow& row : rows) {
    Rational lhs = 0;
    for (Eigen::Index j = 0; j < row.coeffs.size(); ++j) {
      if (q[j] != 0) lhs += row.coeffs[j] * q[j];
    }
    if (lhs < row.rhs) return false;
  }
  return true;
}

std::string HRep::debug_dump() const {
  std::ostringstream out;
  for (const HRepRow& row : rows) {
    bool first = true;
    for (Eigen::Index j = 0; j < row.coeffs.size(); ++j) {
      if (row.coeffs[j].is_zero()) continue;
      if (!first) out << " + ";
      out << row.coeffs[j].str() << " q_" << index_map.columns[j].first << "_"
          << to_string(index_map.columns[j].second);
      first = false;
    }
    if (first) out << "0";
    out << " >= " << row.rhs.str() << "\n";
  }
  return out.str();
}

HRep facet_description(const std::vector<Eigen::VectorXi>& points,
                       PlanIndexMap index_map, int dimension_cap) {
  if (points.empty()) {
    throw std::invalid_argument("facet_description: no points");
  }
  const int n = static_cast<int>(points[0].size());
  if (n > dimension_cap) {
    throw DimensionCapExceeded("hull dimension " + std::to_string(n) +
                               " exceeds cap " + std::to_string(dimension_cap));
  }
  std::vector<Eigen::VectorXi> pts = points;
  for (const auto& p : pts) {
    if (p.size() != n) {
      throw std::invalid_argument("facet_description: ragged points");
    }
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      if (p[j] != 0 && p[j] != 1) {
        throw std::invalid_argument("facet_description: points must be 0/1");
      }
    }
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) { return a == b; }),
            pts.end());
  const std::size_t num = pts.size();

  // Double description of the polar cone {a : (1, p) . a >= 0 for all p}.
  // Lineality starts as all of R^{n+1} and is consumed one constraint at a
  // time; whatever remains at the end encodes the points' affine hull.
  std::vector<RationalVector> lineality;
  for (int j = 0; j <= n; ++j) {
    RationalVector e = RationalVector::Zero(n + 1);
    e[j] = 1;
    lineality.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (std::size_t i = 0; i < num; ++i) {
    RationalVector c = lift(pts[i]);
    int pivot = -1;
    for (std::size_t j = 0; j < lineality.size(); ++j) {
      if (!dot(c, lineality[j]).is_zero()) {
        pivot = static_cast<int>(j);
        break;
      }
    }
    if (pivot >= 0) {
      RationalVector l0 = lineality[pivot];
      Rational cl0 = dot(c, l0);
      if (cl0 < 0) {
        l0 = -l0;
        cl0 = -cl0;
      }
      std::vector<RationalVector> next;
      for (std::size_t j = 0; j < lineality.size(); ++j) {
        if (static_cast<int>(j) == pivot) continue;
        RationalVector l = lineality[j] - (dot(c, lineality[j]) / cl0) * l0;
        make_primitive(l);
        next.push_back(std::move(l));
      }
      lineality = std::move(next);
      for (Ray& r : rays) {
        Rational cr = dot(c, r.v);
        if (!cr.is_zero()) r.v -= (cr / cl0) * l0;
        make_primitive(r.v);
        set_bit(r.zero, i);
      }
      Ray born;
      born.v = std::move(l0);
      make_primitive(born.v);
      born.zero = make_bits(num);
      for (std::size_t j = 0; j < i; ++j) set_bit(born.zero, j);
      rays.push_back(std::move(born));
      continue;
    }

    std::vector<Rational> d(rays.size());
    std::vector<std::size_t> pos, zer, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      d[r] = dot(c, rays[r].v);
      if (d[r] > 0) {
        pos.push_back(r);
      } else if (d[r].is_zero()) {
        zer.push_back(r);
      } else {
        neg.push_back(r);
      }
    }
    if (neg.empty()) {
      for (std::size_t r : zer) set_bit(rays[r].zero, i);
      continue;
    }
    std::vector<Ray> born;
    for (std::size_t ip : pos) {
      for (std::size_t in : neg) {
        Bits common = bits_and(rays[ip].zero, rays[in].zero);
        bool adjacent = true;
        for (std::size_t r3 = 0; r3 < rays.size() && adjacent; ++r3) {
          if (r3 == ip || r3 == in) continue;
          if (bits_subset(common, rays[r3].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray w;
        w.v = d[ip] * rays[in].v - d[in] * rays[ip].v;
        make_primitive(w.v);
        w.zero = std::move(common);
        set_bit(w.zero, i);
        born.push_back(std::move(w));
      }
    }
    std::vector<Ray> kept;
    kept.reserve(pos.size() + zer.size() + born.size());
    for (std::size_t r : pos) kept.push_back(std::move(rays[r]));
    for (std::size_t r : zer) {
      set_bit(rays[r].zero, i);
      kept.push_back(std::move(rays[r]));
    }
    for (Ray& w : born) kept.push_back(std::move(w));
    rays = std::move(kept);
  }

  HRep hrep;
  hrep.index_map = std::move(index_map);
  hrep.points = pts;

  std::vector<RationalVector> lifted;
  lifted.reserve(num);
  for (const auto& p : pts) lifted.push_back(lift(p));
  const int full_rank = rational_rank(lifted);

  // Leftover lineality vectors are orthogonal to every lifted point: each
  // gives an affine-hull equality, emitted as a >= pair.
  for (const RationalVector& l : lineality) {
    RationalVector a = l.tail(n);
    if (a.isZero()) continue;
    HRepRow row;
    row.coeffs = a;
    row.rhs = -l[0];
    hrep.rows.push_back(row);
    HRepRow neg_row;
    neg_row.coeffs = -a;
    neg_row.rhs = l[0];
    hrep.rows.push_back(std::move(neg_row));
  }

  // Extreme rays are facet candidates; keep those whose tight point set has
  // affine rank one below the hull, one row per distinct tight set.
  struct Candidate {
    HRepRow row;
    Bits tight;
  };
  std::vector<Candidate> cands;
  for (const Ray& r : rays) {
    RationalVector a = r.v.tail(n);
    if (a.isZero()) continue;
    Candidate cand;
    cand.row.coeffs = a;
    cand.row.rhs = -r.v[0];
    cand.tight = make_bits(num);
    std::vector<RationalVector> tight_lifted;
    for (std::size_t i = 0; i < num; ++i) {
      Rational slack = dot(r.v, lifted[i]);
      if (slack < 0) throw std::logic_error("hull row violates an input point");
      if (slack.is_zero()) {
        set_bit(cand.tight, i);
        tight_lifted.push_back(lifted[i]);
      }
    }
    if (rational_rank(std::move(tight_lifted)) != full_rank - 1) continue;
    cands.push_back(std::move(cand));
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a,
                                           const Candidate& b) {
    return coeffs_less(a.row, b.row);
  });
  std::map<Bits, bool> seen_tight;
  for (Candidate& cand : cands) {
    if (seen_tight.emplace(cand.tight, true).second) {
      hrep.rows.push_back(std::move(cand.row));
    }
  }
  return hrep;
}

std::vector<ProjectedRow> project_to_y(
    const HRep& hrep,
    const std::map<std::string, std::vector<std::string>>& nearby) {
  const int n = hrep.index_map.dimension();
  std::vector<bool> dead(n, false);
  for (int j = 0; j < n; ++j) {
    auto it = nearby.find(hrep.index_map.columns[j].first);
    dead[j] = (it == nearby.end() || it->second.empty());
  }
  bool has_dead = std::any_of(dead.begin(), dead.end(), [](bool b) { return b; });
  if (has_dead) {
    bool survivor = false;
    for (const auto& p : hrep.points) {
      bool ok = true;
      for (int j = 0; j < n; ++j) {
        if (dead[j] && p[j] != 0) ok = false;
      }
      if (ok) {
        survivor = true;
        break;
      }
    }
    if (!survivor) {
      throw PlanNotExecutable(
          "every plan needs an operation with no location in reach");
    }
  }

  std::vector<ProjectedRow> out;
  for (const HRepRow& row : hrep.rows) {
    ProjectedRow pr;
    pr.rhs = to_ll(row.rhs);
    for (int j = 0; j < n; ++j) {
      if (row.coeffs[j].is_zero() || dead[j]) continue;
      const auto& [break_id, mode] = hrep.index_map.columns[j];
      for (const std::string& loc : nearby.at(break_id)) {
        pr.terms.push_back({break_id, loc, mode, to_ll(row.coeffs[j])});
      }
    }
    if (pr.terms.empty()) {
      if (pr.rhs > 0) {
        throw std::logic_error("projected row infeasible despite survivor");
      }
      continue;
    }
    out.push_back(std::move(pr));
  }
  return out;
}

}  // namespace evplace
