#include "instab/cones.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace instab {

namespace {

ZMat identity_z(int n) {
  ZMat I(n, ZVec(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

ZMat nullspace_in(const ZMat& M, int n) {
  if (M.empty()) return identity_z(n);
  return nullspace(M);
}

ZMat stack(const ZMat& A, const ZMat& B) {
  ZMat R = A;
  R.insert(R.end(), B.begin(), B.end());
  return R;
}

// Calls fn on every size-k index subset of {0..m-1}.
template <typename F>
void for_subsets(int m, int k, F&& fn) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (int i = start; i <= m - (k - depth); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

Ray canonicalize_ray(const ZVec& v) {
  if (is_zero(v)) throw Error("ZeroVector", "cannot canonicalize the zero vector");
  return Ray{primitive(v)};
}

bool proj_points_equal(const QVec& r1, const QVec& r2) {
  if (is_zero(r1) || is_zero(r2)) throw Error("ZeroVector", "projective point must be nonzero");
  if (r1.size() != r2.size()) throw Error("DimensionMismatch", "proj_points_equal");
  Rat lambda = 0;
  for (size_t i = 0; i < r1.size(); ++i) {
    if ((r1[i] == 0) != (r2[i] == 0)) return false;
    if (r1[i] == 0) continue;
    Rat f = r2[i] / r1[i];
    if (f <= 0) return false;
    if (lambda == 0)
      lambda = f;
    else if (f != lambda)
      return false;
  }
  return true;
}

bool proj_points_equal(const ZVec& r1, const ZVec& r2) {
  return proj_points_equal(to_qvec(r1), to_qvec(r2));
}

RationalCone::RationalCone(int ambient_dim, std::vector<Ray> generators)
    : ambient_dim_(ambient_dim) {
  if (ambient_dim < 1) throw Error("DimensionMismatch", "ambient dimension must be positive");
  for (auto& g : generators) {
    if (static_cast<int>(g.coords.size()) != ambient_dim)
      throw Error("DimensionMismatch", "generator has wrong dimension");
    g = canonicalize_ray(g.coords);
    if (std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(g);
  }
}

RationalCone RationalCone::from_generators(int ambient_dim, const ZMat& gens) {
  std::vector<Ray> rays;
  rays.reserve(gens.size());
  for (const auto& g : gens) rays.push_back(Ray{g});
  return RationalCone(ambient_dim, std::move(rays));
}

int RationalCone::dim() const {
  ZMat G;
  for (const auto& g : gens_) G.push_back(g.coords);
  return G.empty() ? 0 : rank(G);
}

bool RationalCone::is_simplicial() const { return dim() == static_cast<int>(gens_.size()); }

const HalfspaceDesc& RationalCone::facets() const {
  if (facets_) return *facets_;
  auto desc = std::make_shared<HalfspaceDesc>();
  ZMat G;
  for (const auto& g : gens_) G.push_back(g.coords);
  desc->equalities = nullspace_in(G, ambient_dim_);
  int d = ambient_dim_ - static_cast<int>(desc->equalities.size());
  if (d > 0) {
    std::set<ZVec> seen;
    for_subsets(static_cast<int>(gens_.size()), d - 1, [&](const std::vector<int>& idx) {
      ZMat S;
      for (int i : idx) S.push_back(gens_[i].coords);
      if (rank(S) != d - 1) return;
      ZMat ns = nullspace_in(stack(S, desc->equalities), ambient_dim_);
      if (ns.size() != 1) return;
      ZVec h = ns[0];
      bool pos = true, neg = true;
      for (const auto& g : gens_) {
        int s = sgn(dot(h, g.coords));
        if (s > 0) neg = false;
        if (s < 0) pos = false;
      }
      if (!pos && !neg) return;
      if (!pos) h = instab::neg(h);
      if (seen.insert(h).second) desc->inequalities.push_back(h);
    });
  }
  facets_ = desc;
  return *facets_;
}

ZMat RationalCone::facet_functionals() const {
  const auto& f = facets();
  ZMat out;
  for (const auto& e : f.equalities) {
    out.push_back(e);
    out.push_back(instab::neg(e));
  }
  for (const auto& h : f.inequalities) out.push_back(h);
  return out;
}

bool RationalCone::contains(const QVec& x) const { return !separating_facet(x).has_value(); }

bool RationalCone::contains(const ZVec& x) const { return contains(to_qvec(x)); }

std::optional<ZVec> RationalCone::separating_facet(const QVec& x) const {
  if (static_cast<int>(x.size()) != ambient_dim_)
    throw Error("DimensionMismatch", "point has wrong dimension");
  const auto& f = facets();
  for (const auto& e : f.equalities) {
    int s = sgn(dot(e, x));
    if (s > 0) return instab::neg(e);
    if (s < 0) return e;
  }
  for (const auto& h : f.inequalities)
    if (dot(h, x) < 0) return h;
  return std::nullopt;
}

bool RationalCone::strictly_convex() const {
  for (const auto& g : gens_)
    if (contains(to_qvec(instab::neg(g.coords)))) return false;
  return true;
}

RationalCone RationalCone::from_inequalities(int ambient_dim, const ZMat& equalities,
                                             const ZMat& inequalities) {
  ZMat L0 = nullspace_in(equalities, ambient_dim);
  int d0 = static_cast<int>(L0.size());
  if (d0 == 0) return RationalCone(ambient_dim, {});
  // Restrict inequalities to coordinates on the solution span.
  ZMat H;
  for (const auto& h : inequalities) {
    ZVec hr(d0);
    for (int a = 0; a < d0; ++a) hr[a] = dot(h, L0[a]);
    if (!instab::is_zero(hr)) H.push_back(hr);
  }
  ZMat K = nullspace_in(H, d0);
  int dk = static_cast<int>(K.size());
  auto lift = [&](const ZVec& lam) {
    ZVec x(ambient_dim, 0);
    for (int a = 0; a < d0; ++a)
      for (int j = 0; j < ambient_dim; ++j) x[j] += lam[a] * L0[a][j];
    return x;
  };
  ZMat gens;
  for (const auto& k : K) {
    gens.push_back(lift(k));
    gens.push_back(instab::neg(lift(k)));
  }
  if (d0 > dk) {
    int t = d0 - dk - 1;
    for_subsets(static_cast<int>(H.size()), t, [&](const std::vector<int>& idx) {
      ZMat T;
      for (int i : idx) T.push_back(H[i]);
      ZMat W = nullspace_in(T, d0);
      if (static_cast<int>(W.size()) != dk + 1) return;
      for (const auto& w : W) {
        ZMat test = K;
        test.push_back(w);
        if (rank(test) == dk) continue;  // w inside the lineality space
        bool pos = true, neg_ok = true;
        for (const auto& h : H) {
          int s = sgn(dot(h, w));
          if (s > 0) neg_ok = false;
          if (s < 0) pos = false;
        }
        if (pos)
          gens.push_back(lift(w));
        else if (neg_ok)
          gens.push_back(lift(instab::neg(w)));
        break;
      }
    });
  }
  return from_generators(ambient_dim, gens);
}

RationalCone RationalCone::intersect(const RationalCone& other) const {
  if (ambient_dim_ != other.ambient_dim_)
    throw Error("DimensionMismatch", "intersect requires equal ambient dimension");
  const auto& f1 = facets();
  const auto& f2 = other.facets();
  return from_inequalities(ambient_dim_, stack(f1.equalities, f2.equalities),
                           stack(f1.inequalities, f2.inequalities));
}

bool RationalCone::same_cone(const RationalCone& other) const {
  if (ambient_dim_ != other.ambient_dim_) return false;
  for (const auto& g : gens_)
    if (!other.contains(g.coords)) return false;
  for (const auto& g : other.gens_)
    if (!contains(g.coords)) return false;
  return true;
}

bool RationalCone::is_face_of(const RationalCone& big) const {
  if (ambient_dim_ != big.ambient_dim_) return false;
  for (const auto& g : gens_)
    if (!big.contains(g.coords)) return false;
  const auto& bf = big.facets();
  ZMat tight;
  for (const auto& h : bf.inequalities) {
    bool vanishes = true;
    for (const auto& g : gens_)
      if (dot(h, g.coords) != 0) {
        vanishes = false;
        break;
      }
    if (vanishes) tight.push_back(h);
  }
  ZMat face_gens;
  for (const auto& g : big.generators()) {
    bool on_face = true;
    for (const auto& h : tight)
      if (dot(h, g.coords) != 0) {
        on_face = false;
        break;
      }
    if (on_face) face_gens.push_back(g.coords);
  }
  return same_cone(from_generators(ambient_dim_, face_gens));
}

std::vector<RationalCone> RationalCone::faces() const {
  std::map<std::vector<ZVec>, RationalCone> found;
  auto signature = [](const RationalCone& c) {
    std::vector<ZVec> sig;
    for (const auto& g : c.generators()) sig.push_back(g.coords);
    std::sort(sig.begin(), sig.end());
    return sig;
  };
  std::vector<RationalCone> queue{*this};
  found.emplace(signature(*this), *this);
  while (!queue.empty()) {
    RationalCone c = queue.back();
    queue.pop_back();
    for (const auto& h : c.facets().inequalities) {
      ZMat sub;
      for (const auto& g : c.generators())
        if (dot(h, g.coords) == 0) sub.push_back(g.coords);
      RationalCone face = from_generators(ambient_dim_, sub);
      auto sig = signature(face);
      if (found.emplace(sig, face).second) queue.push_back(face);
    }
  }
  std::vector<RationalCone> out;
  for (auto& [sig, c] : found) out.push_back(c);
  return out;
}

std::vector<RationalCone> RationalCone::simplicial_subdivision() const {
  if (!strictly_convex())
    throw Error("NotStrictlyConvex", "subdivision requires a strictly convex cone");
  if (gens_.empty() || gens_.size() == 1) return {*this};

  std::vector<std::vector<int>> cones;  // index sets into gens_, each simplicial
  std::map<std::vector<int>, RationalCone> cone_cache;
  auto cone_of = [&](std::vector<int> idx) -> const RationalCone& {
    std::sort(idx.begin(), idx.end());
    auto it = cone_cache.find(idx);
    if (it == cone_cache.end()) {
      ZMat g;
      for (int i : idx) g.push_back(gens_[i].coords);
      it = cone_cache.emplace(idx, from_generators(ambient_dim_, g)).first;
    }
    return it->second;
  };

  ZMat span_rows;  // processed generators
  for (int gi = 0; gi < static_cast<int>(gens_.size()); ++gi) {
    const ZVec& g = gens_[gi].coords;
    if (cones.empty()) {
      cones.push_back({gi});
      span_rows.push_back(g);
      continue;
    }
    ZMat grown = span_rows;
    grown.push_back(g);
    if (rank(grown) > rank(span_rows)) {
      // New direction: cone over every existing piece.
      for (auto& c : cones) c.push_back(gi);
      span_rows = grown;
      continue;
    }
    ZMat span_eqs = nullspace(span_rows);  // functionals cutting out the current span
    auto facet_normal = [&](const std::vector<int>& facet, int apex) -> ZVec {
      ZMat rows;
      for (int i : facet) rows.push_back(gens_[i].coords);
      ZMat ns = nullspace(stack(rows, span_eqs));
      if (ns.size() != 1) throw Error("InternalError", "facet normal not unique");
      ZVec h = ns[0];
      if (dot(h, gens_[apex].coords) < 0) h = instab::neg(h);
      return h;
    };

    std::vector<int> containing;
    for (int ci = 0; ci < static_cast<int>(cones.size()); ++ci)
      if (cone_of(cones[ci]).contains(g)) containing.push_back(ci);

    std::set<std::vector<int>> next;
    if (!containing.empty()) {
      // Stellar subdivision of every piece containing g.
      std::set<int> drop(containing.begin(), containing.end());
      for (int ci = 0; ci < static_cast<int>(cones.size()); ++ci)
        if (!drop.count(ci)) next.insert(cones[ci]);
      for (int ci : containing) {
        const auto& sigma = cones[ci];
        for (size_t j = 0; j < sigma.size(); ++j) {
          std::vector<int> facet;
          for (size_t a = 0; a < sigma.size(); ++a)
            if (a != j) facet.push_back(sigma[a]);
          if (!facet.empty() && cone_of(facet).contains(g)) continue;
          facet.push_back(gi);
          std::sort(facet.begin(), facet.end());
          next.insert(facet);
        }
      }
    } else {
      // g outside the union: attach to visible free facets.
      for (const auto& sigma : cones) next.insert(sigma);
      for (const auto& sigma : cones) {
        for (size_t j = 0; j < sigma.size(); ++j) {
          std::vector<int> facet;
          for (size_t a = 0; a < sigma.size(); ++a)
            if (a != j) facet.push_back(sigma[a]);
          if (facet.empty()) continue;
          bool shared = false;
          for (const auto& tau : cones) {
            if (tau == sigma) continue;
            bool inside = true;
            for (int i : facet)
              if (!cone_of(tau).contains(gens_[i].coords)) {
                inside = false;
                break;
              }
            if (inside) {
              shared = true;
              break;
            }
          }
          if (shared) continue;
          ZVec h = facet_normal(facet, sigma[j]);
          if (dot(h, g) < 0) {
            std::vector<int> fresh = facet;
            fresh.push_back(gi);
            std::sort(fresh.begin(), fresh.end());
            next.insert(fresh);
          }
        }
      }
    }
    cones.assign(next.begin(), next.end());
    span_rows.push_back(g);
  }

  std::vector<RationalCone> out;
  for (const auto& c : cones) out.push_back(cone_of(c));
  return out;
}

bool is_classical_fan(const std::vector<RationalCone>& cones) {
  for (size_t i = 0; i < cones.size(); ++i)
    for (size_t j = i + 1; j < cones.size(); ++j) {
      RationalCone w = cones[i].intersect(cones[j]);
      if (!w.is_face_of(cones[i]) || !w.is_face_of(cones[j])) return false;
    }
  return true;
}

ZVec ConeMorphism::column(int j) const {
  ZVec c(rows());
  for (int i = 0; i < rows(); ++i) c[i] = matrix[i][j];
  return c;
}

QVec ConeMorphism::apply(const QVec& lambda) const {
  if (static_cast<int>(lambda.size()) != cols())
    throw Error("DimensionMismatch", "morphism applied to wrong dimension");
  QVec y(rows(), rat(0));
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) y[i] += Rat(matrix[i][j]) * lambda[j];
  return y;
}

bool morphism_check(const ZMat& M, int k, int n) {
  if (static_cast<int>(M.size()) != n) return false;
  for (const auto& row : M) {
    if (static_cast<int>(row.size()) != k) return false;
    for (const auto& x : row)
      if (x < 0) return false;
  }
  return rank(M) == k;
}

ConeMorphism compose(const ConeMorphism& outer, const ConeMorphism& inner) {
  if (outer.cols() != inner.rows()) throw Error("DimensionMismatch", "morphism composition");
  ZMat M(outer.rows(), ZVec(inner.cols(), 0));
  for (int i = 0; i < outer.rows(); ++i)
    for (int j = 0; j < inner.cols(); ++j)
      for (int l = 0; l < inner.rows(); ++l) M[i][j] += outer.matrix[i][l] * inner.matrix[l][j];
  return ConeMorphism{M};
}

}  // namespace instab
