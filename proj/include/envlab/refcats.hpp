#pragma once

// Hand-coded reference categories used as independent oracles: finite sets
// with injections / bijections, the augmented semi-simplex category, functions
// with ordered fibers, the three-letter word category, truncated Δ^op, and the
// small shape categories (point, discrete, span, parallel pair, reflexive pair).
// None of these are derived from the envelope construction.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "util.hpp"

namespace envlab {

// A category whose morphisms are functions on {0..n-1}, stored as image lists.
struct FunctionCategory {
  FiniteCategory cat;
  std::vector<std::vector<int>> fn;  // mor id -> images
  std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> index;

  int mor_of(int src, int dst, const std::vector<int>& f) const {
    auto it = index.find({{src, dst}, f});
    require(it != index.end(), ErrorKind::resolve, cat.name + ": no such morphism");
    return it->second;
  }
};

namespace detail {

inline void add_fn_mor(FunctionCategory& F, int src, int dst, const std::vector<int>& f,
                       const std::string& nm) {
  int id = F.cat.add_mor(src, dst, nm);
  F.fn.push_back(f);
  F.index[{{src, dst}, f}] = id;
}

inline std::string fn_name(const std::vector<int>& f) {
  std::string s = "[";
  for (size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + "]";
}

// all functions {0..n-1} -> {0..m-1}, lexicographic
inline std::vector<std::vector<int>> all_functions(int n, int m) {
  std::vector<std::vector<int>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  if (m == 0) return out;
  std::vector<int> f(static_cast<size_t>(n), 0);
  while (true) {
    out.push_back(f);
    int i = n - 1;
    while (i >= 0 && f[static_cast<size_t>(i)] == m - 1) f[static_cast<size_t>(i--)] = 0;
    if (i < 0) break;
    ++f[static_cast<size_t>(i)];
  }
  return out;
}

inline bool is_injective(const std::vector<int>& f) {
  std::set<int> seen(f.begin(), f.end());
  return seen.size() == f.size();
}

inline bool is_monotone_strict(const std::vector<int>& f) {
  for (size_t i = 1; i < f.size(); ++i)
    if (f[i] <= f[i - 1]) return false;
  return true;
}

inline void close_function_category(FunctionCategory& F) {
  for (int x = 0; x < F.cat.num_objects(); ++x) {
    int n = F.cat.grades[static_cast<size_t>(x)];
    F.cat.set_identity(x, F.mor_of(x, x, identity_perm(n)));
  }
  for (int f = 0; f < F.cat.num_mors(); ++f)
    for (int g = 0; g < F.cat.num_mors(); ++g) {
      if (F.cat.dst(f) != F.cat.src(g)) continue;
      std::vector<int> comp(F.fn[static_cast<size_t>(f)].size());
      for (size_t i = 0; i < comp.size(); ++i)
        comp[i] = F.fn[static_cast<size_t>(g)][static_cast<size_t>(F.fn[static_cast<size_t>(f)][i])];
      F.cat.set_comp(g, f, F.mor_of(F.cat.src(f), F.cat.dst(g), comp));
    }
}

}  // namespace detail

// Finite sets 0..L and injections.
inline FunctionCategory fin_inj(int L) {
  FunctionCategory F;
  F.cat.name = "Fin^inj";
  for (int n = 0; n <= L; ++n) F.cat.add_object(std::to_string(n), n);
  for (int n = 0; n <= L; ++n)
    for (int m = 0; m <= L; ++m)
      for (const auto& f : detail::all_functions(n, m))
        if (detail::is_injective(f)) detail::add_fn_mor(F, n, m, f, detail::fn_name(f));
  detail::close_function_category(F);
  return F;
}

// Finite ordinals 0..L and order-preserving injections (augmented semi-simplex).
inline FunctionCategory delta_plus_inj(int L) {
  FunctionCategory F;
  F.cat.name = "Delta+^inj";
  for (int n = 0; n <= L; ++n) F.cat.add_object(std::to_string(n), n);
  for (int n = 0; n <= L; ++n)
    for (int m = 0; m <= L; ++m)
      for (const auto& f : detail::all_functions(n, m))
        if (detail::is_monotone_strict(f)) detail::add_fn_mor(F, n, m, f, detail::fn_name(f));
  detail::close_function_category(F);
  return F;
}

// Finite sets 0..L and bijections: the groupoid of symmetric groups.
inline FunctionCategory fin_iso(int L) {
  FunctionCategory F;
  F.cat.name = "Fin^iso";
  for (int n = 0; n <= L; ++n) F.cat.add_object(std::to_string(n), n);
  for (int n = 0; n <= L; ++n)
    for (const auto& f : all_perms(n)) detail::add_fn_mor(F, n, n, f, detail::fn_name(f));
  detail::close_function_category(F);
  return F;
}

// ---------------------------------------------------------------------------
// Functions with a linear order on every fiber.
// Composite fiber orders are lexicographic: for g∘f over t, sort i by
// (position of f(i) in g's fiber order over t, position of i in f's fiber
// order over f(i)).

struct FiberOrderCategory {
  FiniteCategory cat;
  std::vector<std::vector<int>> fn;
  std::vector<std::vector<std::vector<int>>> orders;  // per mor, per target point, ordered fiber
  std::map<std::pair<std::pair<int, int>, std::pair<std::vector<int>, std::vector<std::vector<int>>>>,
           int>
      index;

  int mor_of(int src, int dst, const std::vector<int>& f,
             const std::vector<std::vector<int>>& ord) const {
    auto it = index.find({{src, dst}, {f, ord}});
    require(it != index.end(), ErrorKind::resolve, "fiber-order category: no such morphism");
    return it->second;
  }
};

inline FiberOrderCategory fiber_order_category(int L) {
  FiberOrderCategory F;
  F.cat.name = "OrdFib";
  for (int n = 0; n <= L; ++n) F.cat.add_object(std::to_string(n), n);
  for (int n = 0; n <= L; ++n)
    for (int m = 0; m <= L; ++m)
      for (const auto& f : detail::all_functions(n, m)) {
        // enumerate all fiber orderings: product over fibers of |fiber|! permutations
        std::vector<std::vector<int>> fibers(static_cast<size_t>(m));
        for (int i = 0; i < n; ++i) fibers[static_cast<size_t>(f[static_cast<size_t>(i)])].push_back(i);
        std::vector<std::vector<std::vector<int>>> per_fiber;
        for (const auto& fib : fibers) {
          std::vector<std::vector<int>> arrangements;
          for (const auto& p : all_perms(static_cast<int>(fib.size()))) {
            std::vector<int> arr;
            for (int v : p) arr.push_back(fib[static_cast<size_t>(v)]);
            arrangements.push_back(arr);
          }
          per_fiber.push_back(arrangements);
        }
        std::vector<int> pick(static_cast<size_t>(m), 0);
        while (true) {
          std::vector<std::vector<int>> ord;
          for (int j = 0; j < m; ++j) ord.push_back(per_fiber[static_cast<size_t>(j)][static_cast<size_t>(pick[static_cast<size_t>(j)])]);
          int id = F.cat.add_mor(n, m, detail::fn_name(f));
          F.fn.push_back(f);
          F.orders.push_back(ord);
          F.index[{{n, m}, {f, ord}}] = id;
          int j = m - 1;
          while (j >= 0 &&
                 pick[static_cast<size_t>(j)] + 1 >=
                     static_cast<int>(per_fiber[static_cast<size_t>(j)].size()))
            pick[static_cast<size_t>(j--)] = 0;
          if (j < 0) break;
          ++pick[static_cast<size_t>(j)];
        }
      }
  for (int x = 0; x <= L; ++x) {
    std::vector<std::vector<int>> ord;
    for (int j = 0; j < x; ++j) ord.push_back({j});
    F.cat.set_identity(x, F.mor_of(x, x, identity_perm(x), ord));
  }
  for (int f = 0; f < F.cat.num_mors(); ++f)
    for (int g = 0; g < F.cat.num_mors(); ++g) {
      if (F.cat.dst(f) != F.cat.src(g)) continue;
      const auto& ff = F.fn[static_cast<size_t>(f)];
      const auto& gf = F.fn[static_cast<size_t>(g)];
      const auto&ford = F.orders[static_cast<size_t>(f)];
      const auto& gord = F.orders[static_cast<size_t>(g)];
      std::vector<int> comp(ff.size());
      for (size_t i = 0; i < ff.size(); ++i) comp[i] = gf[static_cast<size_t>(ff[i])];
      int k = F.cat.grades[static_cast<size_t>(F.cat.dst(g))];
      std::vector<std::vector<int>> ord(static_cast<size_t>(k));
      auto pos_in = [](const std::vector<int>& v, int x) {
        for (size_t p = 0; p < v.size(); ++p)
          if (v[p] == x) return static_cast<int>(p);
        fail(ErrorKind::internal, "fiber order missing element");
      };
      for (int t = 0; t < k; ++t) {
        std::vector<std::pair<std::pair<int, int>, int>> keyed;
        for (size_t i = 0; i < ff.size(); ++i)
          if (comp[i] == t)
            keyed.push_back({{pos_in(gord[static_cast<size_t>(t)], ff[i]),
                              pos_in(ford[static_cast<size_t>(ff[i])], static_cast<int>(i))},
                             static_cast<int>(i)});
        std::sort(keyed.begin(), keyed.end());
        for (const auto& [key, i] : keyed) ord[static_cast<size_t>(t)].push_back(i);
      }
      F.cat.set_comp(g, f, F.mor_of(F.cat.src(f), F.cat.dst(g), comp, ord));
    }
  return F;
}

// ---------------------------------------------------------------------------
// Words b^k a^l c^m, morphisms = slot functions sending b-slots to b-slots,
// c-slots to c-slots, and a-slots anywhere. Slots of (k,l,m) are numbered
// 0..k-1 (b), k..k+l-1 (a), k+l..k+l+m-1 (c).

struct WordCategory {
  FiniteCategory cat;
  std::vector<std::array<int, 3>> klm;  // per object
  std::vector<std::vector<int>> fn;
  std::map<std::array<int, 3>, int> obj_of;
  std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> index;

  int mor_of(int src, int dst, const std::vector<int>& f) const {
    auto it = index.find({{src, dst}, f});
    require(it != index.end(), ErrorKind::resolve, "word category: no such morphism");
    return it->second;
  }
};

inline WordCategory word_category(int L) {
  WordCategory W;
  W.cat.name = "Words(b,a,c)";
  for (int n = 0; n <= L; ++n)
    for (int k = 0; k <= n; ++k)
      for (int l = 0; l + k <= n; ++l) {
        int m = n - k - l;
        std::string nm = "b^" + std::to_string(k) + "a^" + std::to_string(l) + "c^" + std::to_string(m);
        int id = W.cat.add_object(nm, n);
        W.klm.push_back({k, l, m});
        W.obj_of[{k, l, m}] = id;
      }
  for (int x = 0; x < W.cat.num_objects(); ++x)
    for (int y = 0; y < W.cat.num_objects(); ++y) {
      auto [k, l, m] = W.klm[static_cast<size_t>(x)];
      auto [k2, l2, m2] = W.klm[static_cast<size_t>(y)];
      int n = k + l + m, n2 = k2 + l2 + m2;
      for (const auto& f : detail::all_functions(n, n2)) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
          if (i < k) ok = f[static_cast<size_t>(i)] < k2;                    // b -> b
          else if (i >= k + l) ok = f[static_cast<size_t>(i)] >= k2 + l2;    // c -> c
        }
        if (!ok) continue;
        int id = W.cat.add_mor(x, y, detail::fn_name(f));
        W.fn.push_back(f);
        W.index[{{x, y}, f}] = id;
      }
    }
  for (int x = 0; x < W.cat.num_objects(); ++x) {
    auto [k, l, m] = W.klm[static_cast<size_t>(x)];
    W.cat.set_identity(x, W.mor_of(x, x, identity_perm(k + l + m)));
  }
  for (int f = 0; f < W.cat.num_mors(); ++f)
    for (int g = 0; g < W.cat.num_mors(); ++g) {
      if (W.cat.dst(f) != W.cat.src(g)) continue;
      std::vector<int> comp(W.fn[static_cast<size_t>(f)].size());
      for (size_t i = 0; i < comp.size(); ++i)
        comp[i] = W.fn[static_cast<size_t>(g)][static_cast<size_t>(W.fn[static_cast<size_t>(f)][i])];
      W.cat.set_comp(g, f, W.mor_of(W.cat.src(f), W.cat.dst(g), comp));
    }
  return W;
}

// ---------------------------------------------------------------------------
// Δ^op truncated: objects [0..N]; hom([m],[n]) = monotone maps [n] -> [m],
// stored as their image lists of length n+1.

struct DeltaOpCategory {
  FiniteCategory cat;
  std::vector<std::vector<int>> data;  // per mor: the underlying monotone map
  std::map<std::pair<std::pair<int, int>, std::vector<int>>, int> index;

  // hom([m],[n]) entry given by monotone phi: [n] -> [m]
  int mor_of(int m, int n, const std::vector<int>& phi) const {
    auto it = index.find({{m, n}, phi});
    require(it != index.end(), ErrorKind::resolve, "delta-op: no such morphism");
    return it->second;
  }
};

inline std::vector<std::vector<int>> monotone_maps(int n_src, int n_dst) {
  // weakly monotone maps {0..n_src} -> {0..n_dst}
  std::vector<std::vector<int>> out;
  std::vector<int> f(static_cast<size_t>(n_src) + 1, 0);
  while (true) {
    out.push_back(f);
    int i = n_src;
    while (i >= 0 && f[static_cast<size_t>(i)] == n_dst) --i;
    if (i < 0) break;
    int v = ++f[static_cast<size_t>(i)];
    for (int j = i + 1; j <= n_src; ++j) f[static_cast<size_t>(j)] = v;
  }
  return out;
}

inline DeltaOpCategory delta_op(int N) {
  DeltaOpCategory D;
  D.cat.name = "Delta^op";
  for (int n = 0; n <= N; ++n) D.cat.add_object("[" + std::to_string(n) + "]", n);
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n)
      for (const auto& phi : monotone_maps(n, m)) {
        int id = D.cat.add_mor(m, n, detail::fn_name(phi) + "^op");
        D.data.push_back(phi);
        D.index[{{m, n}, phi}] = id;
      }
  for (int n = 0; n <= N; ++n) {
    std::vector<int> idm(static_cast<size_t>(n) + 1);
    std::iota(idm.begin(), idm.end(), 0);
    D.cat.set_identity(n, D.mor_of(n, n, idm));
  }
  for (int f = 0; f < D.cat.num_mors(); ++f)
    for (int g = 0; g < D.cat.num_mors(); ++g) {
      if (D.cat.dst(f) != D.cat.src(g)) continue;
      // f: [a]->[b] with data alpha: [b]->[a]; g: [b]->[c] with beta: [c]->[b]
      const auto& alpha = D.data[static_cast<size_t>(f)];
      const auto& beta = D.data[static_cast<size_t>(g)];
      std::vector<int> comp(beta.size());
      for (size_t i = 0; i < beta.size(); ++i) comp[i] = alpha[static_cast<size_t>(beta[i])];
      D.cat.set_comp(g, f, D.mor_of(D.cat.src(f), D.cat.dst(g), comp));
    }
  return D;
}

// ---------------------------------------------------------------------------
// Small shapes.

inline int mor_by_name(const FiniteCategory& C, const std::string& nm) {
  for (int m = 0; m < C.num_mors(); ++m)
    if (C.mors[static_cast<size_t>(m)].name == nm) return m;
  fail(ErrorKind::resolve, C.name + ": no morphism named " + nm);
}

inline int obj_by_name(const FiniteCategory& C, const std::string& nm) {
  for (int x = 0; x < C.num_objects(); ++x)
    if (C.objects[static_cast<size_t>(x)] == nm) return x;
  fail(ErrorKind::resolve, C.name + ": no object named " + nm);
}

inline FiniteCategory point_category() {
  FiniteCategory C;
  C.name = "point";
  int x = C.add_object("*");
  int id = C.add_identity(x);
  C.set_comp(id, id, id);
  return C;
}

inline FiniteCategory discrete_category(int n) {
  FiniteCategory C;
  C.name = "discrete" + std::to_string(n);
  for (int i = 0; i < n; ++i) {
    int x = C.add_object("d" + std::to_string(i));
    int id = C.add_identity(x);
    C.set_comp(id, id, id);
  }
  return C;
}

// b <- a -> c with morphisms named f: a->b and g: a->c.
inline FiniteCategory span_category() {
  FiniteCategory C;
  C.name = "span";
  int a = C.add_object("a"), b = C.add_object("b"), c = C.add_object("c");
  int ia = C.add_identity(a), ib = C.add_identity(b), ic = C.add_identity(c);
  int f = C.add_mor(a, b, "f");
  int g = C.add_mor(a, c, "g");
  C.set_comp(ia, ia, ia);
  C.set_comp(ib, ib, ib);
  C.set_comp(ic, ic, ic);
  C.set_comp(f, ia, f);
  C.set_comp(ib, f, f);
  C.set_comp(g, ia, g);
  C.set_comp(ic, g, g);
  return C;
}

// two parallel arrows f,g: x -> y
inline FiniteCategory parallel_pair() {
  FiniteCategory C;
  C.name = "parallel-pair";
  int x = C.add_object("x"), y = C.add_object("y");
  int ix = C.add_identity(x), iy = C.add_identity(y);
  int f = C.add_mor(x, y, "f");
  int g = C.add_mor(x, y, "g");
  C.set_comp(ix, ix, ix);
  C.set_comp(iy, iy, iy);
  C.set_comp(f, ix, f);
  C.set_comp(iy, f, f);
  C.set_comp(g, ix, g);
  C.set_comp(iy, g, g);
  return C;
}

// Reflexive pair: d0,d1: top -> base with common section s (d0∘s = d1∘s = id).
// hom(base,base)={id}, hom(base,top)={s}, hom(top,base)={d0,d1},
// hom(top,top)={id, s∘d0, s∘d1}. Equivalent to Δ^op truncated at [1].
inline FiniteCategory reflexive_pair() {
  FiniteCategory C;
  C.name = "reflexive-pair";
  int base = C.add_object("base", 0);
  int top = C.add_object("top", 1);
  int ib = C.add_identity(base);
  int it = C.add_identity(top);
  int d0 = C.add_mor(top, base, "d0");
  int d1 = C.add_mor(top, base, "d1");
  int s = C.add_mor(base, top, "s");
  int e0 = C.add_mor(top, top, "s.d0");
  int e1 = C.add_mor(top, top, "s.d1");
  C.set_comp(ib, ib, ib);
  C.set_comp(it, it, it);
  for (int d : {d0, d1}) {
    C.set_comp(d, it, d);
    C.set_comp(ib, d, d);
    C.set_comp(d, s, ib);  // reflexivity
  }
  C.set_comp(s, ib, s);
  C.set_comp(it, s, s);
  C.set_comp(e0, it, e0);
  C.set_comp(it, e0, e0);
  C.set_comp(e1, it, e1);
  C.set_comp(it, e1, e1);
  C.set_comp(s, d0, e0);
  C.set_comp(s, d1, e1);
  C.set_comp(d0, e0, d0);
  C.set_comp(d0, e1, d1);  // d0∘(s∘d1) = (d0∘s)∘d1 = d1
  C.set_comp(d1, e0, d0);
  C.set_comp(d1, e1, d1);
  C.set_comp(e0, s, s);  // (s∘d0)∘s = s
  C.set_comp(e1, s, s);
  C.set_comp(e0, e0, e0);
  C.set_comp(e0, e1, e1);  // e0∘e1 = s∘(d0∘s)∘d1 = s∘d1
  C.set_comp(e1, e0, e0);
  C.set_comp(e1, e1, e1);
  return C;
}

}  // namespace envlab
