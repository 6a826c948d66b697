#pragma once

// The monoidal envelope of an operad morphism p: P -> O, built as a graded
// category: objects are tuples of P-colors together with an O-operation out
// of their image, morphisms are (index map, fiber operations, unary) triples
// subject to a compatibility equation. Includes the universal P-algebra in
// the envelope, the extension of a P-algebra to a diagram on the envelope,
// generating morphisms for large truncations, materialization as a
// FiniteCategory, and the reference-category isomorphism checker.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "fincat.hpp"
#include "operad.hpp"
#include "target.hpp"
#include "util.hpp"

namespace envlab {

struct EnvObject {
  std::vector<int> colors;  // P-colors, in slot order
  int out = 0;              // O-color
  int op = 0;               // O-operation with profile p(colors) -> out

  int grade() const { return static_cast<int>(colors.size()); }
  bool operator==(const EnvObject& o) const {
    return colors == o.colors && out == o.out && op == o.op;
  }
};

struct EnvMorphism {
  int src = -1, dst = -1;   // object ids in the envelope
  std::vector<int> alpha;   // slot assignment source -> target
  std::vector<int> psi;     // per target slot: P-operation on the fiber
  int u = -1;               // unary O-operation between the outs

  bool operator==(const EnvMorphism& o) const {
    return src == o.src && dst == o.dst && alpha == o.alpha && psi == o.psi && u == o.u;
  }
  bool operator<(const EnvMorphism& o) const {
    return std::tie(src, dst, alpha, psi, u) < std::tie(o.src, o.dst, o.alpha, o.psi, o.u);
  }
};

// the permutation sorting source slots by (alpha(i), i)
inline Perm fiber_sort_perm(const std::vector<int>& alpha) {
  Perm s(alpha.size());
  std::iota(s.begin(), s.end(), 0);
  std::stable_sort(s.begin(), s.end(),
                   [&](int a, int b) { return alpha[static_cast<size_t>(a)] < alpha[static_cast<size_t>(b)]; });
  return s;
}

struct Envelope {
  OperadMorphism p;
  int max_grade = 0;
  std::vector<EnvObject> objects;  // ordered by (grade, colors lex, out, op)
  std::map<std::tuple<std::vector<int>, int, int>, int> index_;
  std::vector<int> max_fiber_arity_;  // per P-color: largest arity of a P-op with that out

  const OperadSpec& P() const { return *p.source; }
  const OperadSpec& O() const { return *p.target; }

  const EnvObject& obj(int x) const { return objects[static_cast<size_t>(x)]; }
  int num_objects() const { return static_cast<int>(objects.size()); }
  int grade(int x) const { return obj(x).grade(); }

  int id_of(const EnvObject& x) const {
    auto it = index_.find({x.colors, x.out, x.op});
    return it == index_.end() ? -1 : it->second;
  }

  std::string object_name(int x) const {
    const EnvObject& o = obj(x);
    std::string s = "(";
    for (size_t i = 0; i < o.colors.size(); ++i)
      s += (i ? "," : "") + P().colors[static_cast<size_t>(o.colors[i])];
    s += ";" + O().op_name(o.op) + ")";
    return s;
  }

  // ascending fiber of a target slot
  static std::vector<int> fiber(const std::vector<int>& alpha, int j) {
    std::vector<int> f;
    for (size_t i = 0; i < alpha.size(); ++i)
      if (alpha[i] == j) f.push_back(static_cast<int>(i));
    return f;
  }

  bool structurally_valid(const EnvMorphism& f) const {
    if (f.src < 0 || f.dst < 0 || f.src >= num_objects() || f.dst >= num_objects()) return false;
    const EnvObject& x = obj(f.src);
    const EnvObject& y = obj(f.dst);
    int n = x.grade(), m = y.grade();
    if (static_cast<int>(f.alpha.size()) != n || static_cast<int>(f.psi.size()) != m) return false;
    for (int v : f.alpha)
      if (v < 0 || v >= m) return false;
    for (int j = 0; j < m; ++j) {
      int psi = f.psi[static_cast<size_t>(j)];
      std::vector<int> prof;
      for (int i : fiber(f.alpha, j)) prof.push_back(x.colors[static_cast<size_t>(i)]);
      if (P().profile(psi) != prof || P().out(psi) != y.colors[static_cast<size_t>(j)]) return false;
    }
    if (O().arity(f.u) != 1 || O().profile(f.u)[0] != x.out || O().out(f.u) != y.out) return false;
    return true;
  }

  // the defining equation: sorting the composite of the fiber operations by
  // (alpha(i), i) recovers the source operation post-composed with u
  bool compatible(const EnvMorphism& f) const {
    const EnvObject& x = obj(f.src);
    const EnvObject& y = obj(f.dst);
    std::vector<int> mapped;
    for (int psi : f.psi) mapped.push_back(p.map_op(psi));
    int lhs = O().act(O().gamma(y.op, mapped), fiber_sort_perm(f.alpha));
    int rhs = O().gamma(f.u, {x.op});
    return lhs == rhs;
  }

  bool valid(const EnvMorphism& f) const { return structurally_valid(f) && compatible(f); }

  EnvMorphism identity(int x) const {
    const EnvObject& o = obj(x);
    EnvMorphism f;
    f.src = f.dst = x;
    f.alpha = identity_perm(o.grade());
    for (int c : o.colors) f.psi.push_back(P().unit(c));
    f.u = O().unit(o.out);
    return f;
  }

  EnvMorphism compose(const EnvMorphism& g, const EnvMorphism& f) const {
    require(f.dst == g.src, ErrorKind::structural, "envelope composition endpoint mismatch");
    const EnvObject& z = obj(g.dst);
    EnvMorphism h;
    h.src = f.src;
    h.dst = g.dst;
    h.alpha.resize(f.alpha.size());
    for (size_t i = 0; i < f.alpha.size(); ++i)
      h.alpha[i] = g.alpha[static_cast<size_t>(f.alpha[i])];
    for (int k = 0; k < z.grade(); ++k) {
      std::vector<int> children, ord;
      for (int j : fiber(g.alpha, k)) {
        children.push_back(f.psi[static_cast<size_t>(j)]);
        for (int i : fiber(f.alpha, j)) ord.push_back(i);
      }
      int big = P().gamma(g.psi[static_cast<size_t>(k)], children);
      // rho sends the slot holding source ord[s] to the rank of ord[s]
      std::vector<int> sorted = ord;
      std::sort(sorted.begin(), sorted.end());
      Perm rho(ord.size());
      for (size_t s = 0; s < ord.size(); ++s)
        rho[s] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), ord[s]) -
                                  sorted.begin());
      h.psi.push_back(P().act(big, rho));
    }
    h.u = O().gamma(g.u, {f.u});
    return h;
  }

  // all morphisms x -> y, in a deterministic order; alpha is enumerated by
  // depth-first assignment with fiber-size pruning
  std::vector<EnvMorphism> hom(int xi, int yi) const {
    const EnvObject& x = obj(xi);
    const EnvObject& y = obj(yi);
    int n = x.grade(), m = y.grade();
    std::vector<EnvMorphism> out;
    const auto& unaries = O().mul({x.out}, y.out);
    if (unaries.empty()) return out;
    std::vector<int> alpha(static_cast<size_t>(n), 0);
    std::vector<int> fiber_size(static_cast<size_t>(m), 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        // fiber operation candidates per target slot
        std::vector<const std::vector<int>*> cells;
        for (int j = 0; j < m; ++j) {
          std::vector<int> prof;
          for (int s : fiber(alpha, j)) prof.push_back(x.colors[static_cast<size_t>(s)]);
          const auto& cell = P().mul(prof, y.colors[static_cast<size_t>(j)]);
          if (cell.empty()) return;
          cells.push_back(&cell);
        }
        std::vector<int> pick(static_cast<size_t>(m), 0);
        while (true) {
          EnvMorphism f;
          f.src = xi;
          f.dst = yi;
          f.alpha = alpha;
          for (int j = 0; j < m; ++j)
            f.psi.push_back((*cells[static_cast<size_t>(j)])[static_cast<size_t>(pick[static_cast<size_t>(j)])]);
          for (int u : unaries) {
            f.u = u;
            if (compatible(f)) out.push_back(f);
          }
          int j = m - 1;
          while (j >= 0 && pick[static_cast<size_t>(j)] + 1 >=
                               static_cast<int>(cells[static_cast<size_t>(j)]->size()))
            pick[static_cast<size_t>(j--)] = 0;
          if (j < 0) break;
          ++pick[static_cast<size_t>(j)];
        }
        return;
      }
      for (int j = 0; j < m; ++j) {
        if (fiber_size[static_cast<size_t>(j)] + 1 >
            max_fiber_arity_[static_cast<size_t>(y.colors[static_cast<size_t>(j)])])
          continue;
        alpha[static_cast<size_t>(i)] = j;
        ++fiber_size[static_cast<size_t>(j)];
        rec(i + 1);
        --fiber_size[static_cast<size_t>(j)];
      }
    };
    rec(0);
    return out;
  }

  // --- monoidal structure ------------------------------------------------

  EnvObject tensor_obj(int chi, const std::vector<int>& xs) const {
    require(O().arity(chi) == static_cast<int>(xs.size()), ErrorKind::structural,
            "tensor label arity mismatch");
    EnvObject t;
    std::vector<int> ops;
    for (size_t i = 0; i < xs.size(); ++i) {
      const EnvObject& x = obj(xs[i]);
      require(O().profile(chi)[i] == x.out, ErrorKind::structural, "tensor label color mismatch");
      for (int c : x.colors) t.colors.push_back(c);
      ops.push_back(x.op);
    }
    t.out = O().out(chi);
    t.op = O().gamma(chi, ops);
    return t;
  }

  // tensor of morphisms over a target-side label chi: the source is labeled
  // by gamma(chi; u_1..u_k) and the assembled unary is the unit
  EnvMorphism tensor_mor(int chi, const std::vector<EnvMorphism>& fs) const {
    std::vector<int> srcs, dsts, us;
    for (const auto& f : fs) {
      srcs.push_back(f.src);
      dsts.push_back(f.dst);
      us.push_back(f.u);
    }
    int src_label = O().gamma(chi, us);
    EnvMorphism t;
    t.src = id_of(tensor_obj(src_label, srcs));
    t.dst = id_of(tensor_obj(chi, dsts));
    require(t.src >= 0 && t.dst >= 0, ErrorKind::cap,
            "tensor of morphisms leaves the materialized grade range");
    int off_dst = 0;
    for (const auto& f : fs) {
      for (int v : f.alpha) t.alpha.push_back(off_dst + v);
      for (int q : f.psi) t.psi.push_back(q);
      off_dst += obj(f.dst).grade();
    }
    t.u = O().unit(O().out(chi));
    return t;
  }

  // permutation relabeling: the canonical isomorphism x -> x^sigma with
  // alpha = sigma, unit fiber maps, unit unary
  EnvMorphism perm_morphism(int xi, const Perm& sigma) const {
    const EnvObject& x = obj(xi);
    Perm inv = invert_perm(sigma);
    EnvObject y;
    y.colors.resize(x.colors.size());
    for (size_t t = 0; t < x.colors.size(); ++t)
      y.colors[t] = x.colors[static_cast<size_t>(inv[t])];
    y.out = x.out;
    y.op = O().act(x.op, sigma);
    EnvMorphism f;
    f.src = xi;
    f.dst = id_of(y);
    require(f.dst >= 0, ErrorKind::internal, "permuted object not materialized");
    f.alpha.assign(sigma.begin(), sigma.end());
    for (int c : y.colors) f.psi.push_back(P().unit(c));
    f.u = O().unit(x.out);
    return f;
  }

  // --- generating morphisms ----------------------------------------------
  // Adjacent transpositions, non-unit unary slot maps, binary collapses,
  // nullary insertions, and non-unit out-unaries. Every envelope morphism is
  // a composite of these (validated extensionally against full enumeration
  // in the tests), so colimit quotients may be driven by generators alone.
  std::vector<EnvMorphism> generators(int grade_bound) const {
    grade_bound = std::min(grade_bound, max_grade);
    std::vector<EnvMorphism> gens;
    for (int y = 0; y < num_objects(); ++y) {
      const EnvObject& yo = obj(y);
      int m = yo.grade();
      if (m > grade_bound) continue;
      // (a) adjacent transpositions out of y
      for (int k = 0; k + 1 < m; ++k) {
        Perm tau = identity_perm(m);
        std::swap(tau[static_cast<size_t>(k)], tau[static_cast<size_t>(k + 1)]);
        gens.push_back(perm_morphism(y, tau));
      }
      // (b) unary slot maps into y and (c) collapses/insertions into y
      for (int j = 0; j < m; ++j) {
        int cj = yo.colors[static_cast<size_t>(j)];
        for (int q = 0; q < P().num_ops(); ++q) {
          if (P().out(q) != cj) continue;
          int r = P().arity(q);
          if (r > 2) continue;  // higher collapses factor through binaries
          if (r == 1 && q == P().unit(cj)) continue;
          if (m - 1 + r > grade_bound) continue;
          EnvObject x;
          for (int t = 0; t < m; ++t) {
            if (t == j)
              for (int c : P().profile(q)) x.colors.push_back(c);
            else
              x.colors.push_back(yo.colors[static_cast<size_t>(t)]);
          }
          x.out = yo.out;
          std::vector<int> children;
          for (int t = 0; t < m; ++t)
            children.push_back(t == j ? p.map_op(q) : O().unit(p.map_color(yo.colors[static_cast<size_t>(t)])));
          x.op = O().gamma(yo.op, children);
          EnvMorphism f;
          f.src = id_of(x);
          require(f.src >= 0, ErrorKind::internal, "generator source not materialized");
          f.dst = y;
          for (int i = 0; i < x.grade(); ++i)
            f.alpha.push_back(i < j ? i : (i < j + r ? j : i - r + 1));
          for (int t = 0; t < m; ++t)
            f.psi.push_back(t == j ? q : P().unit(yo.colors[static_cast<size_t>(t)]));
          f.u = O().unit(yo.out);
          gens.push_back(f);
        }
      }
      // (d) non-unit out-unaries from y
      for (int v = 0; v < O().num_ops(); ++v) {
        if (O().arity(v) != 1 || O().profile(v)[0] != yo.out) continue;
        if (v == O().unit(yo.out)) continue;
        EnvObject z;
        z.colors = yo.colors;
        z.out = O().out(v);
        z.op = O().gamma(v, {yo.op});
        EnvMorphism f;
        f.src = y;
        f.dst = id_of(z);
        require(f.dst >= 0, ErrorKind::internal, "generator target not materialized");
        f.alpha = identity_perm(m);
        for (int c : yo.colors) f.psi.push_back(P().unit(c));
        f.u = v;
        gens.push_back(f);
      }
    }
    return gens;
  }
};

inline Envelope build_envelope(const OperadMorphism& p, int L) {
  require(L <= p.target->arity_cap, ErrorKind::cap,
          "envelope grade cap exceeds the operad arity cap");
  Envelope E;
  E.p = p;
  E.max_grade = L;
  const OperadSpec& P = *p.source;
  const OperadSpec& O = *p.target;
  E.max_fiber_arity_.assign(static_cast<size_t>(P.num_colors()), 0);
  for (int q = 0; q < P.num_ops(); ++q)
    E.max_fiber_arity_[static_cast<size_t>(P.out(q))] =
        std::max(E.max_fiber_arity_[static_cast<size_t>(P.out(q))], P.arity(q));
  for (int n = 0; n <= L; ++n) {
    std::vector<int> colors(static_cast<size_t>(n), 0);
    while (true) {
      std::vector<int> image;
      for (int c : colors) image.push_back(p.map_color(c));
      for (int out = 0; out < O.num_colors(); ++out)
        for (int op : O.mul(image, out)) {
          EnvObject x{colors, out, op};
          E.index_[{colors, out, op}] = E.num_objects();
          E.objects.push_back(x);
        }
      int i = n - 1;
      while (i >= 0 && colors[static_cast<size_t>(i)] + 1 >= P.num_colors())
        colors[static_cast<size_t>(i--)] = 0;
      if (i < 0) break;
      ++colors[static_cast<size_t>(i)];
    }
  }
  return E;
}

// ---------------------------------------------------------------------------
// Materialization as a FiniteCategory (feasible for small truncations).

struct EnvelopeCat {
  FiniteCategory cat;
  std::vector<int> obj_of;          // cat object -> envelope object id
  std::vector<EnvMorphism> mor_of;  // cat morphism -> envelope morphism
};

inline EnvelopeCat envelope_category(const Envelope& E, int L) {
  EnvelopeCat R;
  R.cat.name = "Env(" + E.P().name + "->" + E.O().name + ")<=" + std::to_string(L);
  std::vector<int> cat_of_env(static_cast<size_t>(E.num_objects()), -1);
  for (int x = 0; x < E.num_objects(); ++x)
    if (E.grade(x) <= L) {
      cat_of_env[static_cast<size_t>(x)] = R.cat.add_object(E.object_name(x), E.grade(x));
      R.obj_of.push_back(x);
    }
  std::map<EnvMorphism, int> mor_index;
  for (int a = 0; a < R.cat.num_objects(); ++a)
    for (int b = 0; b < R.cat.num_objects(); ++b)
      for (const auto& f : E.hom(R.obj_of[static_cast<size_t>(a)], R.obj_of[static_cast<size_t>(b)])) {
        int id = R.cat.add_mor(a, b, "m" + std::to_string(R.cat.num_mors()));
        R.mor_of.push_back(f);
        mor_index[f] = id;
      }
  for (int a = 0; a < R.cat.num_objects(); ++a)
    R.cat.set_identity(a, mor_index.at(E.identity(R.obj_of[static_cast<size_t>(a)])));
  for (int f = 0; f < R.cat.num_mors(); ++f)
    for (int g = 0; g < R.cat.num_mors(); ++g) {
      if (R.cat.dst(f) != R.cat.src(g)) continue;
      EnvMorphism h = E.compose(R.mor_of[static_cast<size_t>(g)], R.mor_of[static_cast<size_t>(f)]);
      auto it = mor_index.find(h);
      require(it != mor_index.end(), ErrorKind::internal,
              "envelope composition left the enumerated morphism set");
      R.cat.set_comp(g, f, it->second);
    }
  return R;
}

// ---------------------------------------------------------------------------
// The universal P-algebra in the envelope: eta(q) = ((q), unit at p(q)),
// operations become collapse morphisms.

struct UnitAlgebra {
  std::vector<int> eta;             // per P-color: envelope object id
  std::map<int, EnvMorphism> mor;   // per P-operation: the collapse morphism
};

inline UnitAlgebra unit_algebra(const Envelope& E) {
  require(E.max_grade >= 1, ErrorKind::structural, "unit algebra needs envelope grade >= 1");
  const OperadSpec& P = E.P();
  UnitAlgebra U;
  for (int q = 0; q < P.num_colors(); ++q) {
    EnvObject o;
    o.colors = {q};
    o.out = E.p.map_color(q);
    o.op = E.O().unit(o.out);
    int id = E.id_of(o);
    require(id >= 0, ErrorKind::internal, "unit object not materialized");
    U.eta.push_back(id);
  }
  for (int op = 0; op < P.num_ops(); ++op) {
    int n = P.arity(op);
    if (n > E.max_grade) continue;
    EnvObject src;
    src.colors = P.profile(op);
    src.out = E.p.map_color(P.out(op));
    src.op = E.p.map_op(op);
    EnvMorphism f;
    f.src = E.id_of(src);
    require(f.src >= 0, ErrorKind::internal, "collapse source not materialized");
    f.dst = U.eta[static_cast<size_t>(P.out(op))];
    f.alpha.assign(static_cast<size_t>(n), 0);
    f.psi = {op};
    f.u = E.O().unit(src.out);
    U.mor[op] = f;
  }
  return U;
}

// algebra laws for the universal P-algebra: units map to identities,
// composition matches gamma through the tensor structure, and the symmetric
// action matches relabeling isomorphisms
inline LawReport check_unit_algebra(const Envelope& E) {
  LawReport rep;
  rep.subject = "universal algebra in Env(" + E.P().name + "->" + E.O().name + ")";
  const OperadSpec& P = E.P();
  UnitAlgebra U = unit_algebra(E);
  for (const auto& [op, f] : U.mor) {
    ++rep.checked;
    if (!E.valid(f)) rep.note("collapse morphism invalid for " + P.op_name(op));
  }
  if (!rep.ok()) return rep;
  for (int c = 0; c < P.num_colors(); ++c) {
    ++rep.checked;
    if (!(U.mor.at(P.unit(c)) == E.identity(U.eta[static_cast<size_t>(c)])))
      rep.note("unit does not map to the identity morphism");
  }
  // equivariance: mor(act(op,s)) = mor(op) ∘ relabeling
  for (const auto& [op, f] : U.mor) {
    int n = P.arity(op);
    for (const auto& s : all_perms(n)) {
      int im = P.act(op, s);
      if (U.mor.find(im) == U.mor.end()) continue;
      const EnvMorphism& g = U.mor.at(im);
      ++rep.checked;
      EnvMorphism rel = E.perm_morphism(g.src, invert_perm(s));
      if (rel.dst != f.src || !(E.compose(f, rel) == g))
        rep.note("equivariance fails on " + P.op_name(op));
    }
  }
  // composition: mor(gamma(op;psis)) = mor(op) ∘ tensor of mor(psi_i)
  int gamma_bound = std::min(E.max_grade, P.arity_cap);
  for (const auto& [op, f] : U.mor) {
    int n = P.arity(op);
    std::vector<int> pattern;
    detail::arity_patterns(n, gamma_bound, pattern, [&](const std::vector<int>& ms) {
      std::vector<int> tuple;
      std::function<void(int)> rec = [&](int slot) {
        if (slot == n) {
          int g = P.gamma(op, tuple);
          if (U.mor.find(g) == U.mor.end()) return;
          ++rep.checked;
          std::vector<EnvMorphism> parts;
          for (int t : tuple) parts.push_back(U.mor.at(t));
          EnvMorphism tens = E.tensor_mor(E.p.map_op(op), parts);
          if (!(E.compose(f, tens) == U.mor.at(g)))
            rep.note("composition law fails on " + P.op_name(op));
          return;
        }
        for (int psi : P.ops_with(P.profile(op)[static_cast<size_t>(slot)], ms[static_cast<size_t>(slot)])) {
          tuple.push_back(psi);
          rec(slot + 1);
          tuple.pop_back();
        }
      };
      rec(0);
    });
    if (rep.violations.size() > 25) return rep;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Extension of a P-algebra to a diagram on the envelope truncation:
// F_A(q_1..q_n, op) = A(q_1) x .. x A(q_n), morphisms group factors by alpha
// and apply the fiber operations.

struct EnvDiagram {
  SetDiagram d;
  std::vector<int> node_of;  // envelope object id -> node (-1 beyond bound)
  std::vector<int> obj_of;   // node -> envelope object id
};

inline std::vector<int> morphism_map(const Envelope& E, const AlgebraTable& A,
                                     const EnvMorphism& f) {
  const EnvObject& x = E.obj(f.src);
  const EnvObject& y = E.obj(f.dst);
  std::vector<int> xs, ys;
  for (int c : x.colors) xs.push_back(A.carrier_of(c));
  for (int c : y.colors) ys.push_back(A.carrier_of(c));
  ProductIndexer xi(xs), yi(ys);
  int yg = y.grade();
  // hoist everything out of the element loop: fiber positions, psi action
  // rows, and flattening strides for each fiber block
  std::vector<std::vector<int>> fibers;
  std::vector<const std::vector<int>*> row(static_cast<size_t>(yg));
  std::vector<std::vector<long long>> pstr(static_cast<size_t>(yg));
  for (int j = 0; j < yg; ++j) {
    fibers.push_back(Envelope::fiber(f.alpha, j));
    int psi = f.psi[static_cast<size_t>(j)];
    auto it = A.action.find(psi);
    require(it != A.action.end(), ErrorKind::structural,
            A.name + ": no action table for " + A.operad->op_name(psi));
    ProductIndexer ix = A.args_indexer(psi);
    require(fibers.back().size() == ix.sizes.size(), ErrorKind::structural,
            "fiber rank does not match the operation profile");
    for (size_t i = 0; i < fibers.back().size(); ++i)
      require(ix.sizes[i] == xs[static_cast<size_t>(fibers.back()[i])], ErrorKind::structural,
              "fiber carrier does not match the operation profile");
    require(static_cast<long long>(it->second.size()) == ix.total, ErrorKind::structural,
            A.name + ": action table size mismatch for " + A.operad->op_name(psi));
    row[static_cast<size_t>(j)] = &it->second;
    pstr[static_cast<size_t>(j)] = ix.strides;
  }
  size_t n = xs.size();
  std::vector<int> a(n, 0);  // odometer over the source product, last fastest
  std::vector<int> map(static_cast<size_t>(xi.total));
  for (long long e = 0; e < xi.total; ++e) {
    long long out = 0;
    for (int j = 0; j < yg; ++j) {
      const auto& fb = fibers[static_cast<size_t>(j)];
      const auto& st = pstr[static_cast<size_t>(j)];
      long long idx = 0;
      for (size_t i = 0; i < fb.size(); ++i)
        idx += st[i] * a[static_cast<size_t>(fb[i])];
      int v = (*row[static_cast<size_t>(j)])[static_cast<size_t>(idx)];
      if (v < 0 || v >= ys[static_cast<size_t>(j)])
        fail(ErrorKind::structural, A.name + ": action value out of range");
      out += yi.strides[static_cast<size_t>(j)] * v;
    }
    map[static_cast<size_t>(e)] = static_cast<int>(out);
    for (size_t i = n; i-- > 0;) {
      if (++a[i] < xs[i]) break;
      a[i] = 0;
    }
  }
  return map;
}

inline EnvDiagram extend_algebra(const Envelope& E, const AlgebraTable& A, int grade_bound,
                                 bool generators_only = false) {
  require(A.operad->signature == E.P().signature, ErrorKind::structural,
          "algebra colors do not match the envelope's source operad");
  EnvDiagram D;
  D.d.pointed = pointed(A.kind);
  D.node_of.assign(static_cast<size_t>(E.num_objects()), -1);
  for (int x = 0; x < E.num_objects(); ++x) {
    if (E.grade(x) > grade_bound) continue;
    long long size = 1;
    for (int c : E.obj(x).colors) size *= A.carrier_of(c);
    require(size <= 1'000'000, ErrorKind::cap, "envelope diagram node too large");
    D.node_of[static_cast<size_t>(x)] = D.d.add_node(static_cast<int>(size), E.grade(x),
                                                     E.object_name(x));
    D.obj_of.push_back(x);
  }
  auto add = [&](const EnvMorphism& f) {
    int s = D.node_of[static_cast<size_t>(f.src)], t = D.node_of[static_cast<size_t>(f.dst)];
    if (s < 0 || t < 0) return;
    D.d.add_edge(s, t, morphism_map(E, A, f));
  };
  if (generators_only) {
    for (const auto& f : E.generators(grade_bound)) add(f);
  } else {
    for (int a : D.obj_of)
      for (int b : D.obj_of)
        for (const auto& f : E.hom(a, b)) add(f);
  }
  return D;
}

// ---------------------------------------------------------------------------
// Category isomorphism checking against hand-coded references: skeletonize
// both sides, then search for a grade-preserving isomorphism of categories.

struct IsoReport {
  bool iso = false;
  std::string obstruction;  // set when iso == false
  std::vector<int> object_witness;  // skeleton(A) object -> skeleton(B) object
};

struct Skeleton {
  Truncation sub;                 // the full subcategory on class representatives
  std::vector<int> class_of;      // original object -> representative index
};

inline Skeleton skeletonize(const FiniteCategory& C) {
  int N = C.num_objects();
  UnionFind uf(N);
  for (int x = 0; x < N; ++x)
    for (int y = x + 1; y < N; ++y) {
      if (C.grades[static_cast<size_t>(x)] != C.grades[static_cast<size_t>(y)]) continue;
      if (uf.find(x) == uf.find(y)) continue;
      bool iso = false;
      for (int f : C.hom(x, y)) {
        for (int g : C.hom(y, x))
          if (C.compose(g, f) == C.identity(x) && C.compose(f, g) == C.identity(y)) {
            iso = true;
            break;
          }
        if (iso) break;
      }
      if (iso) uf.unite(x, y);
    }
  std::vector<bool> keep(static_cast<size_t>(N), false);
  for (int x = 0; x < N; ++x) keep[static_cast<size_t>(uf.find(x))] = true;
  Skeleton S;
  S.sub = full_subcategory(C, keep, C.name + "/iso");
  std::vector<int> rep_index(static_cast<size_t>(N), -1);
  for (size_t i = 0; i < S.sub.obj_orig.size(); ++i)
    rep_index[static_cast<size_t>(S.sub.obj_orig[i])] = static_cast<int>(i);
  for (int x = 0; x < N; ++x) S.class_of.push_back(rep_index[static_cast<size_t>(uf.find(x))]);
  return S;
}

namespace detail {

// hom-cardinality fingerprint of an object, grade by grade
inline std::vector<long long> hom_profile(const FiniteCategory& C, int x) {
  int G = C.max_grade();
  std::vector<long long> prof(static_cast<size_t>(2 * (G + 1) + 1), 0);
  for (int y = 0; y < C.num_objects(); ++y) {
    prof[static_cast<size_t>(C.grades[static_cast<size_t>(y)])] +=
        static_cast<long long>(C.hom(x, y).size());
    prof[static_cast<size_t>(G + 1 + C.grades[static_cast<size_t>(y)])] +=
        static_cast<long long>(C.hom(y, x).size());
  }
  prof.back() = static_cast<long long>(C.hom(x, x).size());
  return prof;
}

// exhaustive search for an isomorphism of categories extending a fixed
// object bijection; morphisms assigned one at a time with composition checks
inline bool extend_to_iso(const FiniteCategory& A, const FiniteCategory& B,
                          const std::vector<int>& obj_map) {
  int M = A.num_mors();
  std::vector<int> mor_map(static_cast<size_t>(M), -1);
  std::vector<bool> used(static_cast<size_t>(B.num_mors()), false);
  // candidates per morphism: the matching hom-set
  std::vector<std::vector<int>> cands(static_cast<size_t>(M));
  for (int f = 0; f < M; ++f) {
    const auto& cell = B.hom(obj_map[static_cast<size_t>(A.src(f))],
                             obj_map[static_cast<size_t>(A.dst(f))]);
    if (A.is_identity(f)) {
      int idb = B.identity(obj_map[static_cast<size_t>(A.src(f))]);
      cands[static_cast<size_t>(f)] = {idb};
    } else
      cands[static_cast<size_t>(f)] = cell;
    if (cands[static_cast<size_t>(f)].empty()) return false;
    if (cell.size() != A.hom(A.src(f), A.dst(f)).size()) return false;
  }
  // assignment order: fewest candidates first
  std::vector<int> order(static_cast<size_t>(M));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cands[static_cast<size_t>(a)].size() < cands[static_cast<size_t>(b)].size();
  });
  std::function<bool(size_t)> rec = [&](size_t k) -> bool {
    if (k == order.size()) return true;
    int f = order[k];
    for (int img : cands[static_cast<size_t>(f)]) {
      if (used[static_cast<size_t>(img)]) continue;
      bool ok = true;
      mor_map[static_cast<size_t>(f)] = img;
      // verify every composition all three of whose morphisms are assigned
      for (int g = 0; g < M && ok; ++g) {
        if (mor_map[static_cast<size_t>(g)] < 0) continue;
        if (A.dst(f) == A.src(g)) {
          int h = A.compose(g, f);
          if (mor_map[static_cast<size_t>(h)] >= 0 &&
              B.compose(mor_map[static_cast<size_t>(g)], img) != mor_map[static_cast<size_t>(h)])
            ok = false;
        }
        if (ok && A.dst(g) == A.src(f)) {
          int h = A.compose(f, g);
          if (mor_map[static_cast<size_t>(h)] >= 0 &&
              B.compose(img, mor_map[static_cast<size_t>(g)]) != mor_map[static_cast<size_t>(h)])
            ok = false;
        }
      }
      if (ok) {
        used[static_cast<size_t>(img)] = true;
        if (rec(k + 1)) return true;
        used[static_cast<size_t>(img)] = false;
      }
      mor_map[static_cast<size_t>(f)] = -1;
    }
    return false;
  };
  return rec(0);
}

}  // namespace detail

// grade-preserving isomorphism search between two skeletal categories
inline IsoReport category_iso(const FiniteCategory& A, const FiniteCategory& B) {
  IsoReport rep;
  if (A.num_objects() != B.num_objects()) {
    rep.obstruction = "object counts differ: " + std::to_string(A.num_objects()) + " vs " +
                      std::to_string(B.num_objects());
    return rep;
  }
  if (A.num_mors() != B.num_mors()) {
    rep.obstruction = "morphism counts differ: " + std::to_string(A.num_mors()) + " vs " +
                      std::to_string(B.num_mors());
    return rep;
  }
  // object candidates by grade + hom profile
  int N = A.num_objects();
  std::vector<std::vector<long long>> profA, profB;
  for (int x = 0; x < N; ++x) profA.push_back(detail::hom_profile(A, x));
  for (int y = 0; y < N; ++y) profB.push_back(detail::hom_profile(B, y));
  std::vector<std::vector<int>> cands(static_cast<size_t>(N));
  for (int x = 0; x < N; ++x) {
    for (int y = 0; y < N; ++y)
      if (A.grades[static_cast<size_t>(x)] == B.grades[static_cast<size_t>(y)] &&
          profA[static_cast<size_t>(x)] == profB[static_cast<size_t>(y)])
        cands[static_cast<size_t>(x)].push_back(y);
    if (cands[static_cast<size_t>(x)].empty()) {
      rep.obstruction = "no object of matching hom-cardinality profile for " +
                        A.objects[static_cast<size_t>(x)];
      return rep;
    }
  }
  std::vector<int> order(static_cast<size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cands[static_cast<size_t>(a)].size() < cands[static_cast<size_t>(b)].size();
  });
  std::vector<int> obj_map(static_cast<size_t>(N), -1);
  std::vector<bool> used(static_cast<size_t>(N), false);
  std::function<bool(size_t)> rec = [&](size_t k) -> bool {
    if (k == order.size()) return detail::extend_to_iso(A, B, obj_map);
    int x = order[k];
    for (int y : cands[static_cast<size_t>(x)]) {
      if (used[static_cast<size_t>(y)]) continue;
      // hom cardinalities against already-assigned objects must match
      bool ok = true;
      for (int z = 0; z < N && ok; ++z) {
        if (obj_map[static_cast<size_t>(z)] < 0) continue;
        if (A.hom(x, z).size() != B.hom(y, obj_map[static_cast<size_t>(z)]).size() ||
            A.hom(z, x).size() != B.hom(obj_map[static_cast<size_t>(z)], y).size())
          ok = false;
      }
      if (!ok) continue;
      obj_map[static_cast<size_t>(x)] = y;
      used[static_cast<size_t>(y)] = true;
      if (rec(k + 1)) return true;
      used[static_cast<size_t>(y)] = false;
      obj_map[static_cast<size_t>(x)] = -1;
    }
    return false;
  };
  if (rec(0)) {
    rep.iso = true;
    rep.object_witness = obj_map;
  } else {
    rep.obstruction = "no grade-preserving isomorphism extends any hom-profile matching";
  }
  return rep;
}

// equivalence check: skeletonize both sides first (envelope truncations are
// rarely skeletal), then search for an isomorphism of the skeletons
inline IsoReport check_envelope_iso(const FiniteCategory& E, const FiniteCategory& R) {
  Skeleton a = skeletonize(E);
  Skeleton b = skeletonize(R);
  // quick per-grade class count comparison for a crisp obstruction
  std::map<int, int> ga, gb;
  for (int g : a.sub.cat.grades) ++ga[g];
  for (int g : b.sub.cat.grades) ++gb[g];
  if (ga != gb) {
    IsoReport rep;
    rep.obstruction = "isomorphism-class counts per grade differ";
    for (const auto& [g, c] : ga)
      rep.obstruction += " [" + std::to_string(g) + ":" + std::to_string(c) + " vs " +
                         std::to_string(gb.count(g) ? gb[g] : 0) + "]";
    return rep;
  }
  return category_iso(a.sub.cat, b.sub.cat);
}

}  // namespace envlab
