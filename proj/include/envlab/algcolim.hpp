#pragma once

// Colimits of algebras over finite shapes. A diagram of O-algebras over K is
// repackaged as a single algebra over cocart(K) x O; its colimit is the
// relative free algebra along the projection onto O. On top of that sit the
// three-route pushout of commutative monoids, the simplicial cut through the
// span envelope, reflexive-coequalizer preservation, and compatibility of the
// tensor (coproduct) of commutative monoids with weakly contractible shapes.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "envlab/freealg.hpp"
#include "envlab/refcats.hpp"

namespace envlab {

// ---------------------------------------------------------------------------
// Diagrams of algebras.

struct AlgebraDiagram {
  const FiniteCategory* shape = nullptr;
  OperadPtr operad;                    // every object is an algebra over this
  TargetKind kind = TargetKind::finset;
  std::vector<AlgebraTable> at;        // per shape object
  std::vector<AlgebraMap> map;         // per shape morphism (identities included)
};

inline AlgebraMap identity_algebra_map(const AlgebraTable& A) {
  AlgebraMap h;
  h.name = "id_" + A.name;
  for (size_t c = 0; c < A.carrier.size(); ++c) {
    std::vector<int> col(static_cast<size_t>(A.carrier[c]));
    std::iota(col.begin(), col.end(), 0);
    h.component.push_back(col);
  }
  return h;
}

inline AlgebraMap compose_algebra_maps(const AlgebraMap& g, const AlgebraMap& f) {
  AlgebraMap h;
  h.name = g.name + "." + f.name;
  for (size_t c = 0; c < f.component.size(); ++c) {
    std::vector<int> col;
    col.reserve(f.component[c].size());
    for (int v : f.component[c]) col.push_back(g.component[c][static_cast<size_t>(v)]);
    h.component.push_back(std::move(col));
  }
  return h;
}

inline LawReport check_algebra_diagram(const AlgebraDiagram& F, int law_cap = 2) {
  LawReport rep;
  require(F.shape != nullptr && F.operad != nullptr, ErrorKind::structural,
          "algebra diagram missing its shape or operad");
  const FiniteCategory& K = *F.shape;
  rep.subject = "algebra diagram over " + K.name;
  require(static_cast<int>(F.at.size()) == K.num_objects() &&
              static_cast<int>(F.map.size()) == K.num_mors(),
          ErrorKind::structural, "algebra diagram size does not match its shape");
  for (int x = 0; x < K.num_objects(); ++x) {
    ++rep.checked;
    if (F.at[static_cast<size_t>(x)].operad->signature != F.operad->signature)
      rep.note("value at " + K.objects[static_cast<size_t>(x)] + " is over a different operad");
    if (F.at[static_cast<size_t>(x)].kind != F.kind)
      rep.note("value at " + K.objects[static_cast<size_t>(x)] + " lives in a different target");
  }
  if (!rep.ok()) return rep;
  for (int x = 0; x < K.num_objects(); ++x)
    rep.merge(algebra_check(F.at[static_cast<size_t>(x)], law_cap));
  for (int m = 0; m < K.num_mors(); ++m)
    rep.merge(check_algebra_map(F.at[static_cast<size_t>(K.src(m))],
                                F.at[static_cast<size_t>(K.dst(m))],
                                F.map[static_cast<size_t>(m)]));
  for (int x = 0; x < K.num_objects(); ++x) {
    ++rep.checked;
    if (!(F.map[static_cast<size_t>(K.identity(x))].component ==
          identity_algebra_map(F.at[static_cast<size_t>(x)]).component))
      rep.note("identity at " + K.objects[static_cast<size_t>(x)] + " is not the identity map");
  }
  for (int f = 0; f < K.num_mors(); ++f)
    for (int g = 0; g < K.num_mors(); ++g) {
      if (K.dst(f) != K.src(g)) continue;
      ++rep.checked;
      AlgebraMap gf = compose_algebra_maps(F.map[static_cast<size_t>(g)],
                                           F.map[static_cast<size_t>(f)]);
      if (!(F.map[static_cast<size_t>(K.compose(g, f))].component == gf.component))
        rep.note("functoriality fails on " + K.mors[static_cast<size_t>(g)].name + " after " +
                 K.mors[static_cast<size_t>(f)].name);
    }
  return rep;
}

// ---------------------------------------------------------------------------
// A diagram of O-algebras is the same thing as one algebra over cocart(K) x O:
// colors are the objects of K, an operation is a tuple of K-morphisms tagged
// with an O-operation, and it acts by moving arguments along the morphisms
// before multiplying.

struct DiagramOperad {
  ProductOperad PO;      // cocart(K) x O
  OperadMorphism proj;   // projection onto O
};

inline DiagramOperad diagram_operad(const FiniteCategory& K, const OperadSpec& O) {
  require(K.num_objects() >= 1, ErrorKind::structural, "diagram operads need a nonempty shape");
  require(O.num_colors() == 1, ErrorKind::cap,
          "diagram operads pair a shape with a single-colored operad");
  DiagramOperad D;
  D.PO = product_operad(builder_cocartesian(K, O.arity_cap), O);
  D.proj = product_projection(D.PO, 1);
  return D;
}

namespace detail {

// locate a cocartesian operation by profile, output color, and hom tuple
inline int cocart_op(const OperadSpec& KC, const std::vector<int>& prof, int out,
                     const std::vector<int>& homs) {
  for (int op = 0; op < KC.num_ops(); ++op)
    if (KC.out(op) == out && KC.profile(op) == prof &&
        KC.op_data[static_cast<size_t>(op)] == homs)
      return op;
  fail(ErrorKind::internal, "cocartesian operation not found");
}

}  // namespace detail

struct DiagramAlgebra {
  DiagramOperad dop;
  AlgebraTable alg;
};

inline DiagramAlgebra diagram_to_algebra(const AlgebraDiagram& F, const DiagramOperad& dop) {
  const FiniteCategory& K = *F.shape;
  const OperadSpec& KC = *dop.PO.left;
  require(KC.signature ==
              "cocartesian:" + category_signature(K) + ":" + std::to_string(KC.arity_cap),
          ErrorKind::structural, "diagram operad was built over a different shape");
  require(dop.PO.right->signature == F.operad->signature, ErrorKind::structural,
          "diagram operad was built over a different operad");
  DiagramAlgebra R{dop, {}};
  AlgebraTable& A = R.alg;
  A.name = "diag(" + K.name + ")";
  A.operad = dop.PO.op;
  A.kind = F.kind;
  for (int k = 0; k < K.num_objects(); ++k) {
    int col = dop.PO.color_of.at({k, 0});
    require(col == static_cast<int>(A.carrier.size()), ErrorKind::internal,
            "product colors out of order");
    A.carrier.push_back(F.at[static_cast<size_t>(k)].carrier_of(0));
  }
  for (int op = 0; op < dop.PO.op->num_ops(); ++op) {
    auto [cop, oop] = dop.PO.op_pair[static_cast<size_t>(op)];
    const std::vector<int>& homs = KC.op_data[static_cast<size_t>(cop)];
    int out_k = KC.out(cop);
    A.set_action_pointwise(op, [&](const std::vector<int>& args) {
      std::vector<int> moved(args.size());
      for (size_t i = 0; i < args.size(); ++i)
        moved[i] = F.map[static_cast<size_t>(homs[i])].apply(0, args[i]);
      return F.at[static_cast<size_t>(out_k)].apply(oop, moved);
    });
  }
  return R;
}

inline DiagramAlgebra diagram_to_algebra(const AlgebraDiagram& F) {
  return diagram_to_algebra(F, diagram_operad(*F.shape, *F.operad));
}

// inverse direction: peel a diagram back out of an algebra over cocart(K) x O
inline AlgebraDiagram algebra_to_diagram(const DiagramAlgebra& D, const FiniteCategory& K,
                                         OperadPtr O) {
  const OperadSpec& KC = *D.dop.PO.left;
  AlgebraDiagram F;
  F.shape = &K;
  F.operad = O;
  F.kind = D.alg.kind;
  for (int k = 0; k < K.num_objects(); ++k) {
    AlgebraTable A;
    A.name = D.alg.name + "@" + K.objects[static_cast<size_t>(k)];
    A.operad = O;
    A.kind = D.alg.kind;
    A.carrier = {D.alg.carrier_of(D.dop.PO.color_of.at({k, 0}))};
    for (int oop = 0; oop < O->num_ops(); ++oop) {
      int n = O->arity(oop);
      std::vector<int> prof(static_cast<size_t>(n), k);
      std::vector<int> homs(static_cast<size_t>(n), K.identity(k));
      int pop = D.dop.PO.op_of.at({detail::cocart_op(KC, prof, k, homs), oop});
      A.action[oop] = D.alg.action.at(pop);
    }
    F.at.push_back(std::move(A));
  }
  for (int m = 0; m < K.num_mors(); ++m) {
    int cop = detail::cocart_op(KC, {K.src(m)}, K.dst(m), {m});
    int pop = D.dop.PO.op_of.at({cop, O->unit(0)});
    AlgebraMap h;
    h.name = K.mors[static_cast<size_t>(m)].name;
    h.component = {D.alg.action.at(pop)};
    F.map.push_back(std::move(h));
  }
  return F;
}

// ---------------------------------------------------------------------------
// Colimit of a diagram of algebras: free algebra of the repackaged diagram
// along the projection, with the cocone legs checked to be natural algebra
// maps that generate every class.

struct AlgColimit {
  FreeAlgebra fa;
  DiagramOperad dop;
  AlgebraTable translated;             // the diagram as one algebra
  std::vector<std::vector<int>> leg;   // per shape object: carrier -> class
  LawReport diagram_report;
  LawReport cocone_report;
};

inline AlgColimit colim_algebras(const AlgebraDiagram& F, int L, bool generators_only = true,
                                 int law_cap = 2, const DiagramOperad* dop = nullptr,
                                 const Envelope* env = nullptr) {
  AlgColimit R;
  R.diagram_report = check_algebra_diagram(F, law_cap);
  if (!R.diagram_report.ok())
    fail(ErrorKind::law, "diagram fails its laws: " + R.diagram_report.violations[0]);
  R.dop = dop ? *dop : diagram_operad(*F.shape, *F.operad);
  R.translated = diagram_to_algebra(F, R.dop).alg;
  R.fa = free_algebra(R.dop.proj, R.translated, L, generators_only, law_cap, {}, env);

  const FiniteCategory& K = *F.shape;
  const TruncatedAlgebra& T = R.fa.alg;
  for (int k = 0; k < K.num_objects(); ++k)
    R.leg.push_back(generator_leg(R.fa, R.dop.PO.color_of.at({k, 0})));

  LawReport& rep = R.cocone_report;
  rep.subject = "colimit cocone over " + K.name;
  for (int m = 0; m < K.num_mors(); ++m) {
    int s = K.src(m), d = K.dst(m);
    for (int v = 0; v < F.at[static_cast<size_t>(s)].carrier_of(0); ++v) {
      ++rep.checked;
      if (R.leg[static_cast<size_t>(d)][static_cast<size_t>(
              F.map[static_cast<size_t>(m)].apply(0, v))] !=
          R.leg[static_cast<size_t>(s)][static_cast<size_t>(v)]) {
        rep.note("legs do not commute with " + K.mors[static_cast<size_t>(m)].name);
        break;
      }
    }
  }
  const OperadSpec& O = *F.operad;
  for (int k = 0; k < K.num_objects(); ++k) {
    const AlgebraTable& A = F.at[static_cast<size_t>(k)];
    for (int op = 0; op < O.num_ops(); ++op) {
      int n = O.arity(op);
      if (n > L) continue;  // products beyond the truncation are undefined
      ProductIndexer ix = A.args_indexer(op);
      bool bad = false;
      for (long long e = 0; e < ix.total && !bad; ++e) {
        std::vector<int> a = ix.unflatten(e);
        std::vector<int> la(a.size());
        for (size_t i = 0; i < a.size(); ++i)
          la[i] = R.leg[static_cast<size_t>(k)][static_cast<size_t>(a[i])];
        ++rep.checked;
        if (T.apply(op, la) !=
            R.leg[static_cast<size_t>(k)][static_cast<size_t>(A.apply(op, a))]) {
          rep.note("leg at " + K.objects[static_cast<size_t>(k)] +
                   " is not a homomorphism on " + O.op_name(op));
          bad = true;
        }
      }
    }
  }
  // joint epimorphy: every class is generated by leg images under the products
  std::vector<char> reach(static_cast<size_t>(T.num_classes), 0);
  for (const auto& lg : R.leg)
    for (int c : lg) reach[static_cast<size_t>(c)] = 1;
  for (int c = 0; c < T.num_classes; ++c)
    if (T.rep_node[static_cast<size_t>(c)] < 0) reach[static_cast<size_t>(c)] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [key, res] : T.ops) {
      if (reach[static_cast<size_t>(res)]) continue;
      bool all = true;
      for (int c : key.second)
        if (!reach[static_cast<size_t>(c)]) all = false;
      if (all) {
        reach[static_cast<size_t>(res)] = 1;
        grew = true;
      }
    }
  }
  for (int c = 0; c < T.num_classes; ++c) {
    ++rep.checked;
    if (!reach[static_cast<size_t>(c)])
      rep.note("class " + T.label[static_cast<size_t>(c)] + " is not generated by the legs");
  }
  return R;
}

// ---------------------------------------------------------------------------
// Materialize a stabilized truncation whose classes all have generator-level
// representatives as a genuine monoid table.

inline AlgebraTable truncation_to_monoid(const TruncatedAlgebra& T, OperadPtr O,
                                         const std::string& nm) {
  require(O->signature == T.operad->signature, ErrorKind::structural,
          nm + ": operad mismatch in monoid extraction");
  bool com = O->signature.rfind("com:", 0) == 0;
  bool assoc = O->signature.rfind("assoc:", 0) == 0;
  require(com || assoc, ErrorKind::cap, nm + ": monoid extraction needs a com or assoc operad");
  require(T.stabilized, ErrorKind::cap, nm + ": truncation has not stabilized");
  require(T.L >= 2, ErrorKind::cap, nm + ": binary products need truncation level >= 2");
  for (int c = 0; c < T.num_classes; ++c)
    require(T.grade[static_cast<size_t>(c)] <= 1, ErrorKind::cap,
            nm + ": class " + T.label[static_cast<size_t>(c)] +
                " has no generator-level representative");
  require(O->ops_with(0, 0).size() == 1, ErrorKind::structural, nm + ": no unique unit element");
  int unit_cls = T.apply(O->ops_with(0, 0)[0], {});
  int b2 = -1;
  if (com) {
    b2 = O->ops_with(0, 2)[0];
  } else {
    for (int op : O->ops_with(0, 2))
      if (O->op_name(op) == "w01") b2 = op;
  }
  require(b2 >= 0, ErrorKind::internal, nm + ": binary operation not found");
  std::vector<std::vector<int>> mult(static_cast<size_t>(T.num_classes),
                                     std::vector<int>(static_cast<size_t>(T.num_classes)));
  for (int x = 0; x < T.num_classes; ++x)
    for (int y = 0; y < T.num_classes; ++y)
      mult[static_cast<size_t>(x)][static_cast<size_t>(y)] = T.apply(b2, {x, y});
  return monoid_algebra(O, mult, unit_cls, T.kind, nm);
}

inline bool monoid_materializable(const TruncatedAlgebra& T) {
  if (!T.stabilized || T.L < 2) return false;
  for (int g : T.grade)
    if (g > 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exhaustive table of commutative monoids on {0..n-1} with unit 0, one
// representative per isomorphism class.

inline std::vector<std::vector<std::vector<int>>> all_commutative_monoids(int n) {
  require(n >= 1 && n <= 4, ErrorKind::cap, "monoid enumeration is exhaustive; carrier 1..4 only");
  std::vector<std::vector<std::vector<int>>> out;
  std::set<std::vector<int>> seen;
  std::vector<std::pair<int, int>> cells;
  for (int i = 1; i < n; ++i)
    for (int j = i; j < n; ++j) cells.push_back({i, j});
  std::vector<int> pick(cells.size(), 0);
  std::vector<int> rest(static_cast<size_t>(std::max(0, n - 1)));
  std::iota(rest.begin(), rest.end(), 1);
  auto run_one = [&]() {
    std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
    for (int j = 0; j < n; ++j) t[0][static_cast<size_t>(j)] = t[static_cast<size_t>(j)][0] = j;
    for (size_t c = 0; c < cells.size(); ++c)
      t[static_cast<size_t>(cells[c].first)][static_cast<size_t>(cells[c].second)] =
          t[static_cast<size_t>(cells[c].second)][static_cast<size_t>(cells[c].first)] = pick[c];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (t[static_cast<size_t>(t[static_cast<size_t>(a)][static_cast<size_t>(b)])]
               [static_cast<size_t>(c)] !=
              t[static_cast<size_t>(a)]
               [static_cast<size_t>(t[static_cast<size_t>(b)][static_cast<size_t>(c)])])
            return;
    // canonical form: least flattening over relabelings of the non-unit elements
    std::vector<int> best;
    std::vector<int> perm = rest;
    do {
      std::vector<int> relabel(static_cast<size_t>(n));
      relabel[0] = 0;
      for (size_t i = 0; i < perm.size(); ++i) relabel[static_cast<size_t>(rest[i])] = perm[i];
      std::vector<int> flat(static_cast<size_t>(n * n));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          flat[static_cast<size_t>(relabel[static_cast<size_t>(a)] * n +
                                   relabel[static_cast<size_t>(b)])] =
              relabel[static_cast<size_t>(t[static_cast<size_t>(a)][static_cast<size_t>(b)])];
      if (best.empty() || flat < best) best = flat;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) {
      std::vector<std::vector<int>> canon(static_cast<size_t>(n),
                                          std::vector<int>(static_cast<size_t>(n)));
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          canon[static_cast<size_t>(a)][static_cast<size_t>(b)] =
              best[static_cast<size_t>(a * n + b)];
      out.push_back(canon);
    }
  };
  while (true) {
    run_one();
    size_t i = 0;
    while (i < pick.size() && pick[i] == n - 1) pick[i++] = 0;
    if (i == pick.size()) break;
    ++pick[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pushouts of commutative monoids along three independent routes.

struct PushoutReport {
  LawReport input_report;
  LawReport result_report;
  AlgebraTable result;                               // from the two-stage resolution
  std::vector<int> leg_b, leg_c;                     // carriers of B and C into the result
  std::vector<std::vector<std::pair<int, int>>> bar_members;  // per class: (b,c) pairs
  int classes_bar = 0, classes_env = 0, classes_cong = 0;
  bool envelope_stabilized = false;
  bool bar_env_agree = false;
  bool bar_cong_agree = false;
  bool all_agree = false;
  std::vector<std::string> env_labels;
  std::vector<int> env_to_bar;                       // evaluation of envelope classes
  std::string obstruction;
};

inline PushoutReport pushout_commutative(const AlgebraTable& A, const AlgebraTable& B,
                                         const AlgebraTable& C, const AlgebraMap& f,
                                         const AlgebraMap& g, int L = 3,
                                         const DiagramOperad* dop = nullptr,
                                         const Envelope* env = nullptr) {
  PushoutReport R;
  const OperadSpec& O = *B.operad;
  require(O.signature.rfind("com:", 0) == 0, ErrorKind::law,
          "pushout inputs must be commutative monoids; got an algebra over " + O.name +
              " (the amalgamated tensor is only the pushout in the commutative case)");
  require(A.operad->signature == O.signature && C.operad->signature == O.signature,
          ErrorKind::structural, "pushout inputs over different operads");
  require(A.kind == B.kind && B.kind == C.kind, ErrorKind::structural,
          "pushout inputs in different targets");
  R.input_report.subject = "pushout span " + B.name + " <- " + A.name + " -> " + C.name;
  R.input_report.merge(algebra_check(A, 3));
  R.input_report.merge(algebra_check(B, 3));
  R.input_report.merge(algebra_check(C, 3));
  R.input_report.merge(check_algebra_map(A, B, f));
  R.input_report.merge(check_algebra_map(A, C, g));
  if (!R.input_report.ok())
    fail(ErrorKind::law, "pushout inputs fail their laws: " + R.input_report.violations[0]);

  int mu0 = O.ops_with(0, 0)[0], mu2 = O.ops_with(0, 2)[0];
  int na = A.carrier_of(0), nb = B.carrier_of(0), nc = C.carrier_of(0);
  int ua = A.apply(mu0, {}), ub = B.apply(mu0, {}), uc = C.apply(mu0, {});
  auto flat = [&](int b, int c) { return b * nc + c; };

  // route one: the two-stage resolution b a c => b c with a pushed either way
  SetDiagram d;
  d.pointed = pointed(B.kind);
  int n_bc = d.add_node(nb * nc, 0, "bc");
  int n_bac = d.add_node(nb * na * nc, 1, "bac");
  std::vector<int> m0(static_cast<size_t>(nb * na * nc)), m1 = m0, ms(static_cast<size_t>(nb * nc));
  for (int b = 0; b < nb; ++b)
    for (int a = 0; a < na; ++a)
      for (int c = 0; c < nc; ++c) {
        int e = (b * na + a) * nc + c;
        m0[static_cast<size_t>(e)] = flat(B.apply(mu2, {b, f.apply(0, a)}), c);
        m1[static_cast<size_t>(e)] = flat(b, C.apply(mu2, {g.apply(0, a), c}));
      }
  for (int b = 0; b < nb; ++b)
    for (int c = 0; c < nc; ++c) ms[static_cast<size_t>(flat(b, c))] = (b * na + ua) * nc + c;
  d.add_edge(n_bac, n_bc, m0, "d0");
  d.add_edge(n_bac, n_bc, m1, "d1");
  d.add_edge(n_bc, n_bac, ms, "s");
  Colimit col = colimit_set(d);
  R.classes_bar = col.num_classes;
  R.bar_members.assign(static_cast<size_t>(col.num_classes), {});
  for (int b = 0; b < nb; ++b)
    for (int c = 0; c < nc; ++c)
      R.bar_members[static_cast<size_t>(col.leg(n_bc, flat(b, c)))].push_back({b, c});

  // induced multiplication, checked on every member pair
  std::vector<std::vector<int>> mult(static_cast<size_t>(col.num_classes),
                                     std::vector<int>(static_cast<size_t>(col.num_classes), -1));
  for (int x = 0; x < nb * nc; ++x)
    for (int y = 0; y < nb * nc; ++y) {
      int cx = col.leg(n_bc, x), cy = col.leg(n_bc, y);
      int p = flat(B.apply(mu2, {x / nc, y / nc}), C.apply(mu2, {x % nc, y % nc}));
      int cp = col.leg(n_bc, p);
      int& cell = mult[static_cast<size_t>(cx)][static_cast<size_t>(cy)];
      if (cell < 0)
        cell = cp;
      else if (cell != cp && R.obstruction.empty())
        R.obstruction = "product not well-defined on classes";
    }
  if (!R.obstruction.empty()) {
    R.result_report.subject = "pushout result";
    R.result_report.note(R.obstruction);
    return R;
  }
  int unit_cls = col.leg(n_bc, flat(ub, uc));
  R.result = monoid_algebra(B.operad, mult, unit_cls, B.kind,
                            "pushout(" + B.name + "<-" + A.name + "->" + C.name + ")");
  R.result_report = algebra_check(R.result, 3);
  R.leg_b.resize(static_cast<size_t>(nb));
  R.leg_c.resize(static_cast<size_t>(nc));
  for (int b = 0; b < nb; ++b) R.leg_b[static_cast<size_t>(b)] = col.leg(n_bc, flat(b, uc));
  for (int c = 0; c < nc; ++c) R.leg_c[static_cast<size_t>(c)] = col.leg(n_bc, flat(ub, c));
  for (int b = 0; b < nb; ++b)
    for (int b2 = 0; b2 < nb; ++b2) {
      ++R.result_report.checked;
      if (R.leg_b[static_cast<size_t>(B.apply(mu2, {b, b2}))] !=
          mult[static_cast<size_t>(R.leg_b[static_cast<size_t>(b)])]
              [static_cast<size_t>(R.leg_b[static_cast<size_t>(b2)])])
        R.result_report.note("inclusion of " + B.name + " is not a homomorphism");
    }
  for (int c = 0; c < nc; ++c)
    for (int c2 = 0; c2 < nc; ++c2) {
      ++R.result_report.checked;
      if (R.leg_c[static_cast<size_t>(C.apply(mu2, {c, c2}))] !=
          mult[static_cast<size_t>(R.leg_c[static_cast<size_t>(c)])]
              [static_cast<size_t>(R.leg_c[static_cast<size_t>(c2)])])
        R.result_report.note("inclusion of " + C.name + " is not a homomorphism");
    }
  for (int a = 0; a < na; ++a) {
    ++R.result_report.checked;
    if (R.leg_b[static_cast<size_t>(f.apply(0, a))] != R.leg_c[static_cast<size_t>(g.apply(0, a))])
      R.result_report.note("pushout square does not commute on the classes");
  }

  // route two: congruence closure of (b f(a), c) ~ (b, g(a) c), saturated
  // under multiplication even though the relation is already product-stable
  UnionFind uf(nb * nc);
  for (size_t e = 0; e < m0.size(); ++e) uf.unite(m0[e], m1[e]);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < nb * nc; ++p)
      for (int q = p + 1; q < nb * nc; ++q) {
        if (uf.find(p) != uf.find(q)) continue;
        for (int m = 0; m < nb * nc; ++m) {
          int pm = flat(B.apply(mu2, {p / nc, m / nc}), C.apply(mu2, {p % nc, m % nc}));
          int qm = flat(B.apply(mu2, {q / nc, m / nc}), C.apply(mu2, {q % nc, m % nc}));
          if (uf.find(pm) != uf.find(qm)) {
            uf.unite(pm, qm);
            changed = true;
          }
        }
      }
  }
  std::set<int> roots;
  for (int v = 0; v < nb * nc; ++v) roots.insert(uf.find(v));
  R.classes_cong = static_cast<int>(roots.size());
  R.bar_cong_agree = true;
  for (int p = 0; p < nb * nc && R.bar_cong_agree; ++p)
    for (int q = 0; q < nb * nc; ++q)
      if ((uf.find(p) == uf.find(q)) != (col.leg(n_bc, p) == col.leg(n_bc, q))) {
        R.bar_cong_agree = false;
        R.obstruction = "congruence closure disagrees with the two-stage resolution";
        break;
      }

  // route three: envelope colimit over the span shape
  FiniteCategory K = span_category();
  AlgebraDiagram F;
  F.shape = &K;
  F.operad = B.operad;
  F.kind = B.kind;
  F.at = {A, B, C};
  F.map = {identity_algebra_map(A), identity_algebra_map(B), identity_algebra_map(C), f, g};
  AlgColimit route = colim_algebras(F, L, true, 2, dop, env);
  const TruncatedAlgebra& T = route.fa.alg;
  R.classes_env = T.num_classes;
  R.envelope_stabilized = T.stabilized;
  R.env_labels = T.label;

  // evaluate every envelope class in the result and transport the products
  R.env_to_bar.assign(static_cast<size_t>(T.num_classes), -1);
  bool consistent = true;
  for (int c = 0; c < T.num_classes && consistent; ++c) {
    for (const ElemTag& m : T.members[static_cast<size_t>(c)]) {
      int val;
      if (m.synthetic()) {
        val = 0;
      } else {
        const EnvObject& o =
            route.fa.env.obj(route.fa.diag.obj_of[static_cast<size_t>(m.node)]);
        std::vector<int> sizes;
        for (int colr : o.colors) sizes.push_back(route.translated.carrier_of(colr));
        std::vector<int> vals = ProductIndexer(sizes).unflatten(m.elem);
        val = unit_cls;
        for (size_t i = 0; i < vals.size(); ++i) {
          int k = route.dop.PO.color_pair[static_cast<size_t>(o.colors[i])].first;
          int cls = k == 0   ? R.leg_b[static_cast<size_t>(f.apply(0, vals[i]))]
                    : k == 1 ? R.leg_b[static_cast<size_t>(vals[i])]
                             : R.leg_c[static_cast<size_t>(vals[i])];
          val = mult[static_cast<size_t>(val)][static_cast<size_t>(cls)];
        }
      }
      int& cell = R.env_to_bar[static_cast<size_t>(c)];
      if (cell < 0)
        cell = val;
      else if (cell != val) {
        consistent = false;
        R.obstruction = "envelope class " + T.label[static_cast<size_t>(c)] +
                        " evaluates inconsistently in the result";
        break;
      }
    }
  }
  bool bijective = consistent && T.num_classes == col.num_classes;
  if (bijective) {
    std::set<int> img(R.env_to_bar.begin(), R.env_to_bar.end());
    bijective = static_cast<int>(img.size()) == col.num_classes;
  }
  bool transported = bijective;
  if (transported)
    for (const auto& [key, res] : T.ops) {
      int acc = unit_cls;
      for (int c : key.second)
        acc = mult[static_cast<size_t>(acc)][static_cast<size_t>(
            R.env_to_bar[static_cast<size_t>(c)])];
      if (acc != R.env_to_bar[static_cast<size_t>(res)]) {
        transported = false;
        R.obstruction = "envelope products disagree with the result";
        break;
      }
    }
  if (transported) {
    for (int b = 0; b < nb && transported; ++b)
      if (R.env_to_bar[static_cast<size_t>(route.leg[1][static_cast<size_t>(b)])] !=
          R.leg_b[static_cast<size_t>(b)])
        transported = false;
    for (int c = 0; c < nc && transported; ++c)
      if (R.env_to_bar[static_cast<size_t>(route.leg[2][static_cast<size_t>(c)])] !=
          R.leg_c[static_cast<size_t>(c)])
        transported = false;
    if (!transported) R.obstruction = "envelope legs disagree with the result legs";
  }
  R.bar_env_agree = consistent && bijective && transported;
  if (!R.bar_env_agree && R.obstruction.empty())
    R.obstruction = "envelope route has " + std::to_string(T.num_classes) +
                    " classes against " + std::to_string(col.num_classes);
  R.all_agree = R.bar_env_agree && R.bar_cong_agree && R.envelope_stabilized &&
                R.result_report.ok() && route.cocone_report.ok();
  return R;
}

// ---------------------------------------------------------------------------
// The simplicial cut: the subcategory b c <=> b a c of the span envelope is a
// reflexive pair, and restricting the diagram along it already computes the
// pushout. Checked extensionally against the whole truncated envelope.

struct PushoutCut {
  LawReport functor_report;
  FinalityResult fin;
  int cat_objects = 0;
  int cat_morphisms = 0;
};

inline PushoutCut pushout_finality_cut(const AlgColimit& R) {
  PushoutCut out;
  const Envelope& E = R.fa.env;
  const ProductOperad& PO = R.dop.PO;
  const OperadSpec& KC = *PO.left;
  const OperadSpec& O = *PO.right;
  require(KC.num_colors() == 3, ErrorKind::structural, "the cut lives over a span shape");
  require(E.max_grade >= 3, ErrorKind::cap, "the cut needs the grade-3 stage of the envelope");
  int col_a = -1, col_b = -1, col_c = -1;
  for (int c = 0; c < 3; ++c) {
    if (KC.colors[static_cast<size_t>(c)] == "a") col_a = c;
    if (KC.colors[static_cast<size_t>(c)] == "b") col_b = c;
    if (KC.colors[static_cast<size_t>(c)] == "c") col_c = c;
  }
  require(col_a >= 0 && col_b >= 0 && col_c >= 0, ErrorKind::structural,
          "the cut expects the span shape's object names");
  int id_b = KC.op_data[static_cast<size_t>(KC.unit(col_b))][0];
  int id_c = KC.op_data[static_cast<size_t>(KC.unit(col_c))][0];
  auto unary_into = [&](int from, int to) {
    for (int op : KC.ops_with(to, 1))
      if (KC.profile(op) == std::vector<int>{from}) return KC.op_data[static_cast<size_t>(op)][0];
    fail(ErrorKind::internal, "span leg not found in the cocartesian operad");
  };
  int f_mor = unary_into(col_a, col_b);
  int g_mor = unary_into(col_a, col_c);
  auto mu = [&](int n) {
    require(O.ops_with(0, n).size() == 1, ErrorKind::structural,
            "the cut expects one operation per arity");
    return O.ops_with(0, n)[0];
  };
  int pc_a = PO.color_of.at({col_a, 0});
  int pc_b = PO.color_of.at({col_b, 0});
  int pc_c = PO.color_of.at({col_c, 0});
  int x_bc = E.id_of({{pc_b, pc_c}, 0, mu(2)});
  int x_bac = E.id_of({{pc_b, pc_a, pc_c}, 0, mu(3)});
  require(x_bc >= 0 && x_bac >= 0, ErrorKind::internal, "cut objects missing from the envelope");
  auto pop = [&](const std::vector<int>& prof, int outc, const std::vector<int>& homs, int n) {
    return PO.op_of.at({detail::cocart_op(KC, prof, outc, homs), mu(n)});
  };
  int psi_bf = pop({col_b, col_a}, col_b, {id_b, f_mor}, 2);
  int psi_gc = pop({col_a, col_c}, col_c, {g_mor, id_c}, 2);
  int psi_a0 = pop({}, col_a, {}, 0);
  int unit_b = PO.op->unit(pc_b), unit_c = PO.op->unit(pc_c);
  int u1 = O.unit(0);
  EnvMorphism d0{x_bac, x_bc, {0, 0, 1}, {psi_bf, unit_c}, u1};
  EnvMorphism d1{x_bac, x_bc, {0, 1, 1}, {unit_b, psi_gc}, u1};
  EnvMorphism s{x_bc, x_bac, {0, 2}, {unit_b, psi_a0, unit_c}, u1};
  require(E.valid(d0) && E.valid(d1) && E.valid(s), ErrorKind::internal,
          "cut morphisms fail the envelope equation");

  EnvelopeCat EC = envelope_category(E, 3);
  out.cat_objects = EC.cat.num_objects();
  out.cat_morphisms = EC.cat.num_mors();
  auto cat_of = [&](int env_id) {
    for (size_t i = 0; i < EC.obj_of.size(); ++i)
      if (EC.obj_of[i] == env_id) return static_cast<int>(i);
    fail(ErrorKind::internal, "cut object beyond the truncated category");
  };
  auto mor_id = [&](const EnvMorphism& m) {
    for (size_t i = 0; i < EC.mor_of.size(); ++i)
      if (EC.mor_of[i] == m) return static_cast<int>(i);
    fail(ErrorKind::internal, "cut morphism beyond the truncated category");
  };
  FiniteCategory rp = reflexive_pair();
  Functor u;
  u.src = &rp;
  u.dst = &EC.cat;
  u.obj_map = {cat_of(x_bc), cat_of(x_bac)};
  u.mor_map.resize(7);
  u.mor_map[0] = EC.cat.identity(u.obj_map[0]);
  u.mor_map[1] = EC.cat.identity(u.obj_map[1]);
  u.mor_map[2] = mor_id(d0);
  u.mor_map[3] = mor_id(d1);
  u.mor_map[4] = mor_id(s);
  u.mor_map[5] = mor_id(E.compose(s, d0));
  u.mor_map[6] = mor_id(E.compose(s, d1));
  out.functor_report = check_functor_laws(u);

  CatDiagram D;
  D.cat = &EC.cat;
  D.pointed = pointed(R.translated.kind);
  for (size_t i = 0; i < EC.obj_of.size(); ++i) {
    const EnvObject& o = E.obj(EC.obj_of[i]);
    long long size = 1;
    for (int c : o.colors) size *= R.translated.carrier_of(c);
    D.sizes.push_back(static_cast<int>(size));
    if (D.pointed) D.basepoints.push_back(0);
  }
  for (const auto& m : EC.mor_of) D.mor_maps.push_back(morphism_map(E, R.translated, m));
  out.fin = finality_check(u, D);
  return out;
}

// ---------------------------------------------------------------------------
// Reflexive coequalizers are computed on underlying carriers: the quotient
// carries well-defined operations and coincides with the envelope colimit.
// The slices x/S of the finality argument supply the siftedness evidence: for
// a grade-n envelope object x = (x_1..x_n) the slice is the category of cones
// (s, x_1 -> s, .., x_n -> s). Grade 0 gives S itself and grade 1 the
// under-categories; those lie at the registered truncation cut and carry
// genuine contraction certificates. Grade-2 slices are reported as found:
// colimits of sets only need them connected, and for a bare pair of objects
// contractibility can genuinely fail (the top-top slice of the reflexive pair
// has the homotopy type of a wedge of two circles).

struct SliceEvidence {
  std::string at;  // the tuple the slice hangs under, e.g. "(top,top)"
  int objects = 0;
  ContractReport report;
};

struct SiftedReport {
  std::vector<SliceEvidence> slices;   // grades 0, 1, 2
  bool slices_low_certified = false;   // grade <= 1 slices all certified
  bool slices_connected = false;       // every slice nonempty and connected
  std::string shape_note;
  bool reflexive = false;
  LawReport input_report;
  int coeq_classes = 0;
  int colim_classes = 0;
  bool ops_well_defined = false;
  bool matches_colimit = false;
  bool stabilized = false;
  bool preserved = false;
  std::string obstruction;
};

inline SiftedReport sifted_preservation_check(const AlgebraDiagram& F, int L = 2,
                                              int law_cap = 2) {
  SiftedReport R;
  const FiniteCategory& K = *F.shape;
  R.slices.push_back({"()", K.num_objects(), weak_contractibility(K)});
  for (int x = 0; x < K.num_objects(); ++x) {
    SliceCategory sl = under_slice(K, x);
    R.slices.push_back({"(" + K.objects[static_cast<size_t>(x)] + ")", sl.cat.num_objects(),
                        weak_contractibility(sl.cat)});
  }
  for (int x = 0; x < K.num_objects(); ++x)
    for (int y = 0; y < K.num_objects(); ++y) {
      SliceCategory sl = multi_slice(K, {x, y});
      R.slices.push_back({"(" + K.objects[static_cast<size_t>(x)] + "," +
                              K.objects[static_cast<size_t>(y)] + ")",
                          sl.cat.num_objects(), weak_contractibility(sl.cat)});
    }
  R.slices_low_certified = true;
  R.slices_connected = true;
  size_t low = 1 + static_cast<size_t>(K.num_objects());
  for (size_t i = 0; i < R.slices.size(); ++i) {
    if (i < low && !R.slices[i].report.certified()) R.slices_low_certified = false;
    if (R.slices[i].report.status == Contractibility::disconnected) R.slices_connected = false;
    if (!R.slices[i].report.certified() && R.shape_note.empty())
      R.shape_note = "slice at " + R.slices[i].at +
                     (R.slices[i].report.status == Contractibility::connected_only
                          ? " is connected but carries no contraction certificate"
                          : " is disconnected");
  }
  if (R.shape_note.empty()) R.shape_note = "every materialized slice certified contractible";

  require(K.num_objects() == 2, ErrorKind::cap,
          "coequalizer preservation is implemented for two-object pair shapes");
  int top = -1, base = -1, d0 = -1, d1 = -1;
  for (int t = 0; t < 2 && top < 0; ++t) {
    const std::vector<int>& down = K.hom(t, 1 - t);
    if (down.size() == 2) {
      top = t;
      base = 1 - t;
      d0 = down[0];
      d1 = down[1];
    }
  }
  require(top >= 0, ErrorKind::cap, "shape is not a pair of parallel arrows");
  require(K.hom(base, base).size() == 1, ErrorKind::cap,
          "extra endomorphisms on the target are not supported");
  int sec = -1;
  for (int m : K.hom(base, top))
    if (K.compose(d0, m) == K.identity(base) && K.compose(d1, m) == K.identity(base)) {
      sec = m;
      break;
    }
  if (sec < 0) {
    R.reflexive = false;
    R.obstruction =
        "the parallel pair has no common section, so the shape is not sifted; " + R.shape_note;
    return R;
  }
  R.reflexive = true;
  R.input_report = check_algebra_diagram(F, law_cap);
  if (!R.input_report.ok())
    fail(ErrorKind::law, "diagram fails its laws: " + R.input_report.violations[0]);

  const AlgebraTable& T = F.at[static_cast<size_t>(top)];
  const AlgebraTable& Bb = F.at[static_cast<size_t>(base)];
  const AlgebraMap& h0 = F.map[static_cast<size_t>(d0)];
  const AlgebraMap& h1 = F.map[static_cast<size_t>(d1)];
  int nb = Bb.carrier_of(0);
  UnionFind uf(nb);
  for (int x = 0; x < T.carrier_of(0); ++x) uf.unite(h0.apply(0, x), h1.apply(0, x));
  std::vector<int> cls(static_cast<size_t>(nb), -1);
  std::map<int, int> idx;
  for (int v = 0; v < nb; ++v) {
    int r = uf.find(v);
    if (!idx.count(r)) idx[r] = static_cast<int>(idx.size());
    cls[static_cast<size_t>(v)] = idx[r];
  }
  R.coeq_classes = static_cast<int>(idx.size());

  // slotwise substitution of equivalent values must not change the class
  const OperadSpec& O = *F.operad;
  R.ops_well_defined = true;
  for (int op = 0; op < O.num_ops() && R.ops_well_defined; ++op) {
    ProductIndexer ix = Bb.args_indexer(op);
    for (long long e = 0; e < ix.total && R.ops_well_defined; ++e) {
      std::vector<int> a = ix.unflatten(e);
      int base_cls = cls[static_cast<size_t>(Bb.apply(op, a))];
      for (size_t i = 0; i < a.size() && R.ops_well_defined; ++i) {
        std::vector<int> b = a;
        for (int w = 0; w < nb; ++w) {
          if (cls[static_cast<size_t>(w)] != cls[static_cast<size_t>(a[i])]) continue;
          b[i] = w;
          if (cls[static_cast<size_t>(Bb.apply(op, b))] != base_cls) {
            R.ops_well_defined = false;
            R.obstruction = "operation " + O.op_name(op) + " is not well-defined on classes";
            break;
          }
        }
      }
    }
  }

  AlgColimit route = colim_algebras(F, L, true, law_cap);
  R.colim_classes = route.fa.alg.num_classes;
  R.stabilized = route.fa.alg.stabilized;
  std::vector<int> ev(static_cast<size_t>(R.coeq_classes), -1);
  bool consistent = true;
  for (int v = 0; v < nb; ++v) {
    int& cell = ev[static_cast<size_t>(cls[static_cast<size_t>(v)])];
    int want = route.leg[static_cast<size_t>(base)][static_cast<size_t>(v)];
    if (cell < 0)
      cell = want;
    else if (cell != want)
      consistent = false;
  }
  std::set<int> img(ev.begin(), ev.end());
  R.matches_colimit = consistent && R.coeq_classes == R.colim_classes &&
                      static_cast<int>(img.size()) == R.colim_classes;
  if (!R.matches_colimit && R.obstruction.empty())
    R.obstruction = "carrier coequalizer has " + std::to_string(R.coeq_classes) +
                    " classes against " + std::to_string(R.colim_classes);
  R.preserved = R.slices_connected && R.slices_low_certified && R.reflexive &&
                R.ops_well_defined && R.matches_colimit && R.stabilized &&
                route.cocone_report.ok();
  return R;
}

// ---------------------------------------------------------------------------
// Tensor (coproduct) of commutative monoids against colimits: over a certified
// weakly contractible shape, (colim G) (x) A and colim(G (x) A) agree; without
// a certificate the cardinalities are still reported, and the two-object
// discrete shape exhibits the mismatch.

struct TensorCompatReport {
  ContractReport shape;
  bool conclusive = false;
  bool match = false;
  bool monoid_iso = false;
  long long left_count = -1, right_count = -1;
  std::string note;
};

inline TensorCompatReport contractible_compat_check(const AlgebraDiagram& G,
                                                    const AlgebraTable& A, int L = 2,
                                                    int law_cap = 2) {
  TensorCompatReport R;
  require(G.operad->signature.rfind("com:", 0) == 0, ErrorKind::cap,
          "tensor compatibility is implemented for commutative monoids");
  require(A.operad->signature == G.operad->signature && A.kind == G.kind,
          ErrorKind::structural, "tensor factor over a different operad or target");
  const FiniteCategory& K = *G.shape;
  R.shape = weak_contractibility(K);

  // both sides live over the same shape and operad, so the envelope is shared
  DiagramOperad dop = diagram_operad(K, *G.operad);
  Envelope env = build_envelope(dop.proj, L + 1);
  AlgColimit left = colim_algebras(G, L, true, law_cap, &dop, &env);
  R.left_count = static_cast<long long>(left.fa.alg.num_classes) * A.carrier_of(0);

  AlgebraDiagram GA;
  GA.shape = G.shape;
  GA.operad = G.operad;
  GA.kind = G.kind;
  int asz = A.carrier_of(0);
  for (const AlgebraTable& X : G.at) GA.at.push_back(algebra_product(X, A));
  for (size_t m = 0; m < G.map.size(); ++m) {
    AlgebraMap h;
    h.name = G.map[m].name + "x" + A.name;
    std::vector<int> col(G.map[m].component[0].size() * static_cast<size_t>(asz));
    for (size_t v = 0; v < G.map[m].component[0].size(); ++v)
      for (int w = 0; w < asz; ++w)
        col[v * static_cast<size_t>(asz) + static_cast<size_t>(w)] =
            G.map[m].component[0][v] * asz + w;
    h.component = {std::move(col)};
    GA.map.push_back(std::move(h));
  }
  AlgColimit right = colim_algebras(GA, L, true, law_cap, &dop, &env);
  R.right_count = right.fa.alg.num_classes;
  R.match = R.left_count == R.right_count;

  if (monoid_materializable(left.fa.alg) && monoid_materializable(right.fa.alg)) {
    AlgebraTable lm = algebra_product(
        truncation_to_monoid(left.fa.alg, G.operad, "colim-then-tensor"), A);
    AlgebraTable rm = truncation_to_monoid(right.fa.alg, G.operad, "tensor-then-colim");
    R.monoid_iso = algebras_isomorphic(lm, rm);
    R.match = R.monoid_iso;
  } else {
    R.note = "classes above the generator level; cardinalities compared instead of tables";
  }
  if (R.shape.certified()) {
    R.conclusive = true;
  } else {
    R.note += std::string(R.note.empty() ? "" : "; ") +
              "shape carries no contractibility certificate, so no agreement is claimed";
  }
  return R;
}

// ---------------------------------------------------------------------------
// Shape-specific diagram helpers.

inline AlgebraDiagram span_diagram(const FiniteCategory& K, const AlgebraTable& A,
                                   const AlgebraTable& B, const AlgebraTable& C,
                                   const AlgebraMap& f, const AlgebraMap& g) {
  AlgebraDiagram F;
  F.shape = &K;
  F.operad = A.operad;
  F.kind = A.kind;
  F.at = {A, B, C};
  F.map = {identity_algebra_map(A), identity_algebra_map(B), identity_algebra_map(C), f, g};
  return F;
}

inline AlgebraDiagram reflexive_pair_diagram(const FiniteCategory& rp, const AlgebraTable& top,
                                             const AlgebraTable& base, const AlgebraMap& d0,
                                             const AlgebraMap& d1, const AlgebraMap& s) {
  AlgebraDiagram F;
  F.shape = &rp;
  F.operad = base.operad;
  F.kind = base.kind;
  F.at = {base, top};
  F.map = {identity_algebra_map(base), identity_algebra_map(top), d0, d1, s,
           compose_algebra_maps(s, d0), compose_algebra_maps(s, d1)};
  return F;
}

}  // namespace envlab
