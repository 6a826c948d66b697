#pragma once

// Truncated free algebras. The envelope route computes the relative free
// algebra as a colimit of the extended algebra over the monoidal envelope;
// the classical route symmetrizes operation spaces directly. Both sides are
// compared class by class, and the universal properties (adjunction and
// colimit cocones) are verified by exhaustive search.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "envlab/envelope.hpp"
#include "envlab/fincat.hpp"
#include "envlab/operad.hpp"
#include "envlab/target.hpp"
#include "envlab/util.hpp"

namespace envlab {

// ---------------------------------------------------------------------------
// A level-L truncation of an algebra: finitely many classes, each tagged by
// the grade where it first appears, with products defined exactly when the
// grades of the arguments fit under the truncation level.

struct TruncatedAlgebra {
  std::string name = "T";
  OperadPtr operad;   // operations act through this operad
  TargetKind kind = TargetKind::finset;
  int L = 0;
  bool stabilized = false;

  int num_classes = 0;
  std::vector<int> grade;                       // per class: grade of its least member
  std::vector<std::string> label;               // per class: rendering of that member
  std::vector<int> rep_node;                    // node of the least member (-1 synthetic)
  std::vector<std::vector<int>> rep_values;     // carrier tuple of the least member
  std::vector<std::vector<ElemTag>> members;    // full member lists
  std::map<std::pair<int, std::vector<int>>, int> ops;  // (op, class tuple) -> class
  std::vector<std::vector<int>> leg;            // cocone: node -> elem -> class
  std::vector<std::string> node_name;

  bool defined(int op, const std::vector<int>& args) const {
    return ops.find({op, args}) != ops.end();
  }

  int apply(int op, const std::vector<int>& args) const {
    auto it = ops.find({op, args});
    require(it != ops.end(), ErrorKind::cap,
            name + ": product of " + operad->op_name(op) +
            " undefined at truncation level " + std::to_string(L));
    return it->second;
  }

  // class of the basepoint (pointed truncations only)
  int basepoint_class() const {
    require(kind == TargetKind::ptdfinset, ErrorKind::structural,
            name + " is not pointed");
    for (const auto& row : leg)
      if (!row.empty()) return row[0];
    require(num_classes == 1, ErrorKind::internal, "empty truncation without synthetic class");
    return 0;
  }
};

namespace detail {

// enumerate class tuples of length k whose grades sum to at most `budget`,
// skipping synthetic classes (they support no products)
inline void class_tuples(const std::vector<int>& grade, const std::vector<int>& rep_node,
                         int k, int budget, std::vector<int>& cur,
                         const std::function<void(const std::vector<int>&)>& body) {
  if (static_cast<int>(cur.size()) == k) {
    body(cur);
    return;
  }
  for (int c = 0; c < static_cast<int>(grade.size()); ++c) {
    if (rep_node[static_cast<size_t>(c)] < 0) continue;
    int g = grade[static_cast<size_t>(c)];
    if (g > budget) continue;
    cur.push_back(c);
    class_tuples(grade, rep_node, k, budget - g, cur, body);
    cur.pop_back();
  }
}

inline std::string elem_label(int v, bool ptd, const std::vector<std::string>* names) {
  if (names && v < static_cast<int>(names->size())) return (*names)[static_cast<size_t>(v)];
  if (ptd) {
    if (v == 0) return "*";
    --v;
  }
  if (v < 26) return std::string(1, static_cast<char>('a' + v));
  return "x" + std::to_string(v);
}

// single-colored tuples concatenate their letters; multi-colored tuples spell
// out the color of each entry
inline std::string tuple_label(const std::vector<int>& cols, const std::vector<int>& vals,
                               const OperadSpec& P, bool ptd,
                               const std::vector<std::vector<std::string>>& names) {
  if (vals.empty()) return "\xce\xb5";
  std::vector<std::string> parts;
  bool flat = P.num_colors() == 1;
  for (size_t i = 0; i < vals.size(); ++i) {
    const std::vector<std::string>* nm = nullptr;
    if (cols[i] < static_cast<int>(names.size())) nm = &names[static_cast<size_t>(cols[i])];
    std::string e = elem_label(vals[i], ptd, nm);
    if (flat) parts.push_back(e);
    else parts.push_back(P.colors[static_cast<size_t>(cols[i])] + ":" + e);
    if (e.size() != 1) flat = false;
  }
  std::string s;
  for (size_t i = 0; i < parts.size(); ++i) s += (i && !flat ? "." : "") + parts[i];
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Compatibility certificate for an envelope shape: look for an initial or
// terminal object by direct hom inspection (envelope objects are sorted by
// grade, so a grade-0 unit tensor is found immediately when present), then
// fall back to the general contraction search on small categories. Pointed
// targets are admitted only with a completed certificate.

inline ContractReport envelope_shape_certificate(const Envelope& E, int L) {
  ContractReport rep;
  std::vector<int> objs;
  for (int x = 0; x < E.num_objects(); ++x)
    if (E.grade(x) <= L) objs.push_back(x);
  if (objs.empty()) {
    rep.steps.push_back("no envelope objects within grade " + std::to_string(L));
    return rep;
  }
  for (int cand : objs) {
    bool initial = true, terminal = true;
    for (int other : objs) {
      if (E.hom(cand, other).size() != 1) initial = false;
      if (E.hom(other, cand).size() != 1) terminal = false;
      if (!initial && !terminal) break;
    }
    if (initial || terminal) {
      rep.status = Contractibility::certified;
      rep.steps.push_back(std::string(initial ? "initial" : "terminal") + " object " +
                          E.object_name(cand));
      return rep;
    }
  }
  if (static_cast<int>(objs.size()) <= 40) return weak_contractibility(envelope_category(E, L).cat);
  rep.status = is_connected(envelope_category(E, L).cat) ? Contractibility::connected_only
                                                         : Contractibility::disconnected;
  rep.steps.push_back("no initial or terminal object; shape too large for contraction search");
  return rep;
}

// ---------------------------------------------------------------------------
// Free algebra along an operad map p, applied to a P-algebra A, truncated at
// level L. The envelope is materialized one grade beyond L so stabilization
// can be observed honestly; products are tensor legs of the colimit.

struct FreeAlgebra {
  TruncatedAlgebra alg;
  Envelope env;
  EnvDiagram diag;
  TruncatedColimit colim;
  LawReport input_report;       // law check of the input algebra
  ContractReport shape_report;  // shape compatibility evidence
};

inline FreeAlgebra free_algebra(const OperadMorphism& p, const AlgebraTable& A, int L,
                                bool generators_only = true, int law_cap = 2,
                                const std::vector<std::vector<std::string>>& elem_names = {},
                                const Envelope* prebuilt = nullptr) {
  require(L >= 1, ErrorKind::cap, "free algebra needs truncation level >= 1");
  require(p.source->signature == A.operad->signature, ErrorKind::structural,
          "algebra is not over the source operad of " + p.name);
  const OperadSpec& O = *p.target;
  require(O.num_colors() == 1, ErrorKind::cap,
          "free algebras are implemented over single-colored target operads");
  require(L + 1 <= O.arity_cap, ErrorKind::cap,
          "arity cap " + std::to_string(O.arity_cap) + " of " + O.name +
          " cannot certify stabilization at level " + std::to_string(L));

  FreeAlgebra F;
  F.input_report = algebra_check(A, law_cap);
  if (!F.input_report.ok())
    fail(ErrorKind::law,
         "input algebra " + A.name + " fails its laws: " + F.input_report.violations[0]);
  if (prebuilt) {
    require(prebuilt->p.source->signature == p.source->signature &&
                prebuilt->p.target->signature == p.target->signature &&
                prebuilt->max_grade >= L + 1,
            ErrorKind::structural, "prebuilt envelope does not fit this free algebra");
    F.env = *prebuilt;
  } else {
    F.env = build_envelope(p, L + 1);
  }
  if (pointed(A.kind)) {
    F.shape_report = envelope_shape_certificate(F.env, L + 1);
    require(F.shape_report.certified(), ErrorKind::law,
            "pointed target refused: Env(" + p.name + ") within grade " +
            std::to_string(L + 1) + " carries no contractibility certificate");
  } else {
    F.shape_report.status = Contractibility::certified;
    F.shape_report.steps.push_back("finite sets: every envelope shape is admissible");
  }
  F.diag = extend_algebra(F.env, A, L + 1, generators_only);
  F.colim = truncated_colimit(F.diag.d, L);

  const OperadSpec& P = *p.source;
  const Colimit& C = F.colim.at_L;
  TruncatedAlgebra& T = F.alg;
  T.name = "free[" + O.name + "](" + A.name + ")";
  T.operad = p.target;
  T.kind = A.kind;
  T.L = L;
  T.stabilized = F.colim.stabilized;
  T.num_classes = C.num_classes;
  T.members = C.members;
  T.leg = C.legs;
  T.node_name = F.diag.d.node_names;

  std::vector<std::vector<int>> rep_sizes(static_cast<size_t>(C.num_classes));
  for (int c = 0; c < C.num_classes; ++c) {
    const ElemTag& t = C.class_rep[static_cast<size_t>(c)];
    T.grade.push_back(t.grade);
    if (t.synthetic()) {
      T.rep_node.push_back(-1);
      T.rep_values.push_back({});
      T.label.push_back("*");
      continue;
    }
    T.rep_node.push_back(t.node);
    const EnvObject& o = F.env.obj(F.diag.obj_of[static_cast<size_t>(t.node)]);
    std::vector<int> sizes;
    for (int col : o.colors) sizes.push_back(A.carrier_of(col));
    ProductIndexer pix(sizes);
    T.rep_values.push_back(pix.unflatten(t.elem));
    rep_sizes[static_cast<size_t>(c)] = sizes;
    T.label.push_back(detail::tuple_label(o.colors, T.rep_values.back(), P,
                                          pointed(A.kind), elem_names));
  }

  for (int chi = 0; chi < O.num_ops(); ++chi) {
    int k = O.arity(chi);
    std::vector<int> cur;
    detail::class_tuples(T.grade, T.rep_node, k, L, cur, [&](const std::vector<int>& cs) {
      std::vector<int> xs, sizes, vals;
      for (int c : cs) {
        xs.push_back(F.diag.obj_of[static_cast<size_t>(T.rep_node[static_cast<size_t>(c)])]);
        for (int s : rep_sizes[static_cast<size_t>(c)]) sizes.push_back(s);
        for (int v : T.rep_values[static_cast<size_t>(c)]) vals.push_back(v);
      }
      int tid = F.env.id_of(F.env.tensor_obj(chi, xs));
      require(tid >= 0, ErrorKind::internal, "tensor object missing from the envelope");
      int tn = F.diag.node_of[static_cast<size_t>(tid)];
      require(tn >= 0, ErrorKind::internal, "tensor node missing from the diagram");
      ProductIndexer pix(sizes);
      T.ops[{chi, cs}] = C.leg(tn, static_cast<int>(pix.flatten(vals)));
    });
  }
  return F;
}

// cocone leg of the generating copy of A at a source color: carrier -> class
inline std::vector<int> generator_leg(const FreeAlgebra& F, int pcolor) {
  UnitAlgebra U = unit_algebra(F.env);
  int node = F.diag.node_of[static_cast<size_t>(U.eta[static_cast<size_t>(pcolor)])];
  require(node >= 0 && !F.colim.at_L.legs[static_cast<size_t>(node)].empty(),
          ErrorKind::internal, "generator node excluded from the truncation");
  return F.colim.at_L.legs[static_cast<size_t>(node)];
}

// ---------------------------------------------------------------------------
// Classical construction: one piece per operation, glued along the symmetric
// action, with products given by concatenation of tuples under gamma. This
// route never touches the envelope and serves as the independent oracle.

inline std::vector<std::pair<int, int>> classic_pieces(const OperadSpec& O, int bound) {
  std::vector<std::pair<int, int>> ps;
  for (int n = 0; n <= std::min(bound, O.arity_cap); ++n)
    for (int op : O.ops_with(0, n)) ps.push_back({n, op});
  return ps;
}

inline TruncatedAlgebra classic_free(OperadPtr Optr, int x_size, TargetKind kind, int L,
                                     const std::vector<std::string>& elem_names = {}) {
  const OperadSpec& O = *Optr;
  require(L >= 1, ErrorKind::cap, "classical construction needs truncation level >= 1");
  require(O.num_colors() == 1, ErrorKind::cap,
          "classical construction applies to single-colored operads");
  require(L + 1 <= O.arity_cap, ErrorKind::cap,
          "arity cap " + std::to_string(O.arity_cap) +
          " cannot certify stabilization at level " + std::to_string(L));
  require(x_size >= 0 && (kind == TargetKind::finset || x_size >= 1), ErrorKind::structural,
          "pointed carrier needs a basepoint");

  auto pieces = classic_pieces(O, L + 1);
  std::map<int, int> node_of_op;
  SetDiagram d;
  d.pointed = pointed(kind);
  for (const auto& [n, op] : pieces) {
    long long size = 1;
    for (int i = 0; i < n; ++i) {
      size *= x_size;
      require(size <= 1'000'000, ErrorKind::cap, "piece too large");
    }
    node_of_op[op] = d.add_node(static_cast<int>(size), n, "(" + O.op_name(op) + ")");
  }
  for (const auto& [n, op] : pieces) {
    std::vector<int> sizes(static_cast<size_t>(n), x_size);
    ProductIndexer pix(sizes);
    for (const auto& s : all_perms(n)) {
      int im = O.act(op, s);
      std::vector<int> map(static_cast<size_t>(pix.total));
      for (long long e = 0; e < pix.total; ++e) {
        std::vector<int> a = pix.unflatten(e);
        std::vector<int> b(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) b[static_cast<size_t>(s[static_cast<size_t>(k)])] = a[static_cast<size_t>(k)];
        map[static_cast<size_t>(e)] = static_cast<int>(pix.flatten(b));
      }
      d.add_edge(node_of_op.at(op), node_of_op.at(im), map, "act");
    }
  }

  TruncatedColimit tc = truncated_colimit(d, L);
  const Colimit& C = tc.at_L;
  TruncatedAlgebra T;
  T.name = "classic[" + O.name + "](|X|=" + std::to_string(x_size) + ")";
  T.operad = Optr;
  T.kind = kind;
  T.L = L;
  T.stabilized = tc.stabilized;
  T.num_classes = C.num_classes;
  T.members = C.members;
  T.leg = C.legs;
  T.node_name = d.node_names;

  for (int c = 0; c < C.num_classes; ++c) {
    const ElemTag& t = C.class_rep[static_cast<size_t>(c)];
    T.grade.push_back(t.grade);
    if (t.synthetic()) {
      T.rep_node.push_back(-1);
      T.rep_values.push_back({});
      T.label.push_back("*");
      continue;
    }
    T.rep_node.push_back(t.node);
    std::vector<int> sizes(static_cast<size_t>(t.grade), x_size);
    ProductIndexer pix(sizes);
    T.rep_values.push_back(pix.unflatten(t.elem));
    std::string lab;
    for (int v : T.rep_values.back())
      lab += detail::elem_label(v, pointed(kind), elem_names.empty() ? nullptr : &elem_names);
    T.label.push_back(lab.empty() ? "\xce\xb5" : lab);
  }

  for (int chi = 0; chi < O.num_ops(); ++chi) {
    int k = O.arity(chi);
    std::vector<int> cur;
    detail::class_tuples(T.grade, T.rep_node, k, L, cur, [&](const std::vector<int>& cs) {
      std::vector<int> children, vals;
      int total = 0;
      for (int c : cs) {
        const auto& piece = pieces[static_cast<size_t>(T.rep_node[static_cast<size_t>(c)])];
        children.push_back(piece.second);
        total += piece.first;
        for (int v : T.rep_values[static_cast<size_t>(c)]) vals.push_back(v);
      }
      int res = O.gamma(chi, children);
      std::vector<int> sizes(static_cast<size_t>(total), x_size);
      ProductIndexer pix(sizes);
      T.ops[{chi, cs}] = C.leg(node_of_op.at(res), static_cast<int>(pix.flatten(vals)));
    });
  }
  return T;
}

// ---------------------------------------------------------------------------
// Route comparison: the canonical map from the classical truncation to the
// envelope truncation, checked member by member for well-definedness, then
// for bijectivity, grade preservation, and preservation of every product.

struct FreeComparison {
  bool iso = false;
  std::string obstruction;
  std::vector<int> class_map;  // classical class -> envelope class
  int classic_classes = 0, envelope_classes = 0;
  bool classic_stabilized = false, envelope_stabilized = false;
};

inline FreeComparison compare_free_routes(const TruncatedAlgebra& TC, const FreeAlgebra& FA) {
  FreeComparison R;
  R.classic_classes = TC.num_classes;
  R.envelope_classes = FA.alg.num_classes;
  R.classic_stabilized = TC.stabilized;
  R.envelope_stabilized = FA.alg.stabilized;
  require(TC.operad->signature == FA.env.O().signature, ErrorKind::structural,
          "routes target different operads");
  require(TC.L == FA.alg.L, ErrorKind::structural, "routes truncated at different levels");
  require(FA.env.P().num_colors() == 1, ErrorKind::structural,
          "route comparison expects a single-colored envelope source");

  const OperadSpec& O = *TC.operad;
  auto pieces = classic_pieces(O, TC.L + 1);
  R.class_map.assign(static_cast<size_t>(TC.num_classes), -1);
  for (int c = 0; c < TC.num_classes; ++c) {
    for (const ElemTag& m : TC.members[static_cast<size_t>(c)]) {
      if (m.synthetic()) continue;
      const auto& piece = pieces[static_cast<size_t>(m.node)];
      EnvObject o;
      o.colors.assign(static_cast<size_t>(piece.first), 0);
      o.out = 0;
      o.op = piece.second;
      int oid = FA.env.id_of(o);
      require(oid >= 0, ErrorKind::internal, "classical piece missing from the envelope");
      int node = FA.diag.node_of[static_cast<size_t>(oid)];
      int cls = FA.colim.at_L.leg(node, m.elem);
      int& slot = R.class_map[static_cast<size_t>(c)];
      if (slot < 0) slot = cls;
      else if (slot != cls) {
        R.obstruction = "class " + TC.label[static_cast<size_t>(c)] +
                        " maps to two distinct envelope classes; the symmetric action "
                        "and the envelope relabelings disagree";
        return R;
      }
    }
    if (R.class_map[static_cast<size_t>(c)] < 0) {
      R.obstruction = "class " + TC.label[static_cast<size_t>(c)] + " has no concrete member";
      return R;
    }
    if (TC.grade[static_cast<size_t>(c)] != FA.alg.grade[static_cast<size_t>(R.class_map[static_cast<size_t>(c)])]) {
      R.obstruction = "class " + TC.label[static_cast<size_t>(c)] + " changes grade across routes";
      return R;
    }
  }

  std::vector<int> hit(static_cast<size_t>(FA.alg.num_classes), 0);
  for (int img : R.class_map)
    if (hit[static_cast<size_t>(img)]++) {
      R.obstruction = "two classical classes land in one envelope class";
      return R;
    }
  if (TC.num_classes != FA.alg.num_classes) {
    R.obstruction = "class counts differ: " + std::to_string(TC.num_classes) +
                    " classical vs " + std::to_string(FA.alg.num_classes) + " envelope";
    return R;
  }

  if (TC.ops.size() != FA.alg.ops.size()) {
    R.obstruction = "product tables have different sizes";
    return R;
  }
  for (const auto& [key, res] : TC.ops) {
    std::vector<int> mapped;
    for (int c : key.second) mapped.push_back(R.class_map[static_cast<size_t>(c)]);
    if (!FA.alg.defined(key.first, mapped) ||
        FA.alg.apply(key.first, mapped) != R.class_map[static_cast<size_t>(res)]) {
      R.obstruction = "product " + O.op_name(key.first) + " disagrees across routes";
      return R;
    }
  }
  R.iso = true;
  return R;
}

// free algebra on a plain set, computed along the projection from the product
// with the unary-unit operad, against the classical symmetrization
struct CompareFree {
  TruncatedAlgebra classic;
  FreeAlgebra envelope_route;
  FreeComparison cmp;
};

inline CompareFree compare_free(OperadPtr Optr, int x_size, int L,
                                const std::vector<std::string>& elem_names = {}) {
  const OperadSpec& O = *Optr;
  require(O.num_colors() == 1, ErrorKind::cap,
          "route comparison applies to single-colored operads");
  auto triv = builder_triv(O.arity_cap);
  ProductOperad P = product_operad(O, triv);
  OperadMorphism pr = product_projection(P, 0);

  AlgebraTable A;
  A.name = "letters" + std::to_string(x_size);
  A.operad = P.op;
  A.kind = TargetKind::finset;  // the symmetrization formula is the unpointed one
  A.carrier = {x_size};
  for (int op = 0; op < P.op->num_ops(); ++op)
    A.set_action_pointwise(op, [](const std::vector<int>& a) { return a[0]; });

  CompareFree R;
  std::vector<std::vector<std::string>> names;
  if (!elem_names.empty()) names.push_back(elem_names);
  R.envelope_route = free_algebra(pr, A, L, true, 2, names);
  R.classic = classic_free(Optr, x_size, TargetKind::finset, L, elem_names);
  R.cmp = compare_free_routes(R.classic, R.envelope_route);
  return R;
}

// ---------------------------------------------------------------------------
// Word oracles. Free associative truncations must biject with words of length
// at most L in the non-basepoint letters; free commutative truncations with
// multisets. Products must be concatenation (resp. union). Both checks read
// the colimit members directly and never trust the envelope.

struct OracleMatch {
  bool ok = false;
  std::string obstruction;
  std::vector<std::vector<int>> word_of_class;
};

namespace detail {

inline bool word_digits(const std::string& nm, std::vector<int>& out) {
  if (nm.empty() || nm[0] != 'w') return false;
  out.clear();
  for (size_t i = 1; i < nm.size(); ++i) {
    if (nm[i] < '0' || nm[i] > '9') return false;
    out.push_back(nm[i] - '0');
  }
  std::vector<int> seen(out.size(), 0);
  for (int v : out) {
    if (v < 0 || v >= static_cast<int>(out.size()) || seen[static_cast<size_t>(v)]) return false;
    seen[static_cast<size_t>(v)] = 1;
  }
  return true;
}

// all words of length <= L over letters {1..k}, shortest first
inline std::vector<std::vector<int>> all_words(int k, int L, bool sorted_only) {
  std::vector<std::vector<int>> out = {{}};
  size_t lo = 0;
  for (int len = 1; len <= L; ++len) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; ++i)
      for (int v = 1; v <= k; ++v) {
        if (sorted_only && !out[i].empty() && out[i].back() > v) continue;
        std::vector<int> w = out[i];
        w.push_back(v);
        out.push_back(w);
      }
    lo = hi;
  }
  return out;
}

// extract the reduced word of one colimit member, given its operation label
// and carrier tuple; commutative labels sort instead of reading digits
inline bool member_word(const OperadSpec& O, int op, const std::vector<int>& vals,
                        bool commutative, std::vector<int>& out) {
  out.clear();
  if (commutative) {
    for (int v : vals)
      if (v != 0) out.push_back(v);
    std::sort(out.begin(), out.end());
    return true;
  }
  std::vector<int> digits;
  if (!word_digits(O.op_name(op), digits) ||
      static_cast<int>(digits.size()) != static_cast<int>(vals.size()))
    return false;
  for (int d : digits)
    if (vals[static_cast<size_t>(d)] != 0) out.push_back(vals[static_cast<size_t>(d)]);
  return true;
}

inline OracleMatch word_match(const FreeAlgebra& FA, int alphabet, bool commutative) {
  OracleMatch R;
  const TruncatedAlgebra& T = FA.alg;
  const OperadSpec& O = *T.operad;
  R.word_of_class.assign(static_cast<size_t>(T.num_classes), {});
  std::vector<int> have(static_cast<size_t>(T.num_classes), 0);

  for (int c = 0; c < T.num_classes; ++c) {
    for (const ElemTag& m : T.members[static_cast<size_t>(c)]) {
      if (m.synthetic()) continue;
      const EnvObject& o = FA.env.obj(FA.diag.obj_of[static_cast<size_t>(m.node)]);
      std::vector<int> sizes(o.colors.size(), alphabet + 1);
      ProductIndexer pix(sizes);
      std::vector<int> w;
      if (!member_word(O, o.op, pix.unflatten(m.elem), commutative, w)) {
        R.obstruction = "operation " + O.op_name(o.op) + " carries no word structure";
        return R;
      }
      if (!have[static_cast<size_t>(c)]) {
        R.word_of_class[static_cast<size_t>(c)] = w;
        have[static_cast<size_t>(c)] = 1;
      } else if (R.word_of_class[static_cast<size_t>(c)] != w) {
        R.obstruction = "class " + T.label[static_cast<size_t>(c)] +
                        " contains members reducing to different words";
        return R;
      }
    }
    if (!have[static_cast<size_t>(c)]) {
      R.obstruction = "class without concrete members";
      return R;
    }
    if (static_cast<int>(R.word_of_class[static_cast<size_t>(c)].size()) !=
        T.grade[static_cast<size_t>(c)]) {
      R.obstruction = "class " + T.label[static_cast<size_t>(c)] +
                      " first appears at the wrong grade";
      return R;
    }
  }

  auto words = all_words(alphabet, T.L, commutative);
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);
  std::vector<int> hit(words.size(), 0);
  for (int c = 0; c < T.num_classes; ++c) {
    auto it = index.find(R.word_of_class[static_cast<size_t>(c)]);
    if (it == index.end()) {
      R.obstruction = "class reduces to a word outside the expected range";
      return R;
    }
    if (hit[static_cast<size_t>(it->second)]++) {
      R.obstruction = "two classes reduce to the same word";
      return R;
    }
  }
  for (size_t i = 0; i < words.size(); ++i)
    if (!hit[i]) {
      R.obstruction = "a word of length <= " + std::to_string(T.L) + " is missing";
      return R;
    }

  for (const auto& [key, res] : T.ops) {
    std::vector<int> expected;
    if (commutative) {
      for (int c : key.second)
        for (int v : R.word_of_class[static_cast<size_t>(c)]) expected.push_back(v);
      std::sort(expected.begin(), expected.end());
    } else {
      std::vector<int> digits;
      if (!word_digits(O.op_name(key.first), digits)) {
        R.obstruction = "unreadable operation name " + O.op_name(key.first);
        return R;
      }
      for (int d : digits)
        for (int v : R.word_of_class[static_cast<size_t>(key.second[static_cast<size_t>(d)])])
          expected.push_back(v);
    }
    if (expected != R.word_of_class[static_cast<size_t>(res)]) {
      R.obstruction = "product " + O.op_name(key.first) + " is not concatenation of words";
      return R;
    }
  }
  R.ok = true;
  return R;
}

}  // namespace detail

// free associative algebra on a pointed set with `alphabet` non-base letters
inline OracleMatch james_word_match(const FreeAlgebra& FA, int alphabet) {
  return detail::word_match(FA, alphabet, false);
}

// free commutative algebra: classes are multisets, products are unions
inline OracleMatch symmetric_product_match(const FreeAlgebra& FA, int alphabet) {
  return detail::word_match(FA, alphabet, true);
}

// ---------------------------------------------------------------------------
// Algebra laws on a truncation, checked wherever both sides are defined:
// units, the symmetric action, and composition against gamma.

inline LawReport check_truncated_laws(const TruncatedAlgebra& T, int gamma_bound = 3) {
  LawReport rep;
  rep.subject = T.name + " (laws within level " + std::to_string(T.L) + ")";
  const OperadSpec& O = *T.operad;
  int unit = O.unit(0);

  for (int c = 0; c < T.num_classes; ++c) {
    if (T.rep_node[static_cast<size_t>(c)] < 0) continue;
    ++rep.checked;
    if (T.apply(unit, {c}) != c)
      rep.note("unit does not fix class " + T.label[static_cast<size_t>(c)]);
  }

  for (const auto& [key, res] : T.ops) {
    int n = O.arity(key.first);
    for (const auto& s : all_perms(n)) {
      int im = O.act(key.first, s);
      std::vector<int> pushed(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k)
        pushed[static_cast<size_t>(s[static_cast<size_t>(k)])] = key.second[static_cast<size_t>(k)];
      ++rep.checked;
      if (!T.defined(im, pushed) || T.apply(im, pushed) != res) {
        rep.note("symmetric action fails on " + O.op_name(key.first));
        break;
      }
    }
  }

  for (int op = 0; op < O.num_ops(); ++op) {
    int n = O.arity(op);
    if (n > gamma_bound) continue;
    std::vector<int> pattern;
    detail::arity_patterns(n, std::min(gamma_bound, O.arity_cap), pattern,
                           [&](const std::vector<int>& ms) {
      int total = 0;
      for (int m : ms) total += m;
      if (total > O.arity_cap) return;
      std::vector<int> kids(static_cast<size_t>(n));
      std::function<void(int)> rec = [&](int slot) {
        if (slot == n) {
          int g = O.gamma(op, kids);
          auto lo = T.ops.lower_bound({g, {}});
          for (auto it = lo; it != T.ops.end() && it->first.first == g; ++it) {
            const std::vector<int>& flat = it->first.second;
            std::vector<int> outer;
            size_t pos = 0;
            bool alldef = true;
            for (int i = 0; i < n && alldef; ++i) {
              std::vector<int> block(flat.begin() + static_cast<long>(pos),
                                     flat.begin() + static_cast<long>(pos + static_cast<size_t>(ms[static_cast<size_t>(i)])));
              pos += static_cast<size_t>(ms[static_cast<size_t>(i)]);
              if (!T.defined(kids[static_cast<size_t>(i)], block)) { alldef = false; break; }
              outer.push_back(T.apply(kids[static_cast<size_t>(i)], block));
            }
            if (!alldef || !T.defined(op, outer)) continue;
            ++rep.checked;
            if (T.apply(op, outer) != it->second)
              rep.note("composition against gamma fails on " + O.op_name(op));
          }
          return;
        }
        for (int psi : O.ops_with(0, ms[static_cast<size_t>(slot)])) {
          kids[static_cast<size_t>(slot)] = psi;
          rec(slot + 1);
        }
      };
      rec(0);
    });
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Identity comparison: the free algebra along an identity map should return
// the input algebra itself, with the generator leg as the bijection.

struct MatchReport {
  bool match = false;
  std::string obstruction;
  std::vector<int> elem_of_class;
};

inline MatchReport truncation_matches_algebra(const FreeAlgebra& FA, const AlgebraTable& B) {
  MatchReport R;
  const TruncatedAlgebra& T = FA.alg;
  require(FA.env.P().num_colors() == 1, ErrorKind::structural,
          "identity comparison expects a single-colored source");
  require(T.operad->signature == B.operad->signature, ErrorKind::structural,
          "comparison against an algebra over a different operad");
  std::vector<int> h = generator_leg(FA, 0);
  if (static_cast<int>(h.size()) != T.num_classes || B.carrier_of(0) != T.num_classes) {
    R.obstruction = "carrier sizes differ: " + std::to_string(B.carrier_of(0)) +
                    " vs " + std::to_string(T.num_classes) + " classes";
    return R;
  }
  R.elem_of_class.assign(static_cast<size_t>(T.num_classes), -1);
  for (int b = 0; b < static_cast<int>(h.size()); ++b) {
    int& slot = R.elem_of_class[static_cast<size_t>(h[static_cast<size_t>(b)])];
    if (slot >= 0) {
      R.obstruction = "generator leg is not injective";
      return R;
    }
    slot = b;
  }
  const OperadSpec& O = *T.operad;
  for (int op = 0; op < O.num_ops(); ++op) {
    int n = O.arity(op);
    if (n > T.L || (n > 0 && B.carrier_of(0) == 0)) continue;
    std::vector<int> args(static_cast<size_t>(n), 0);
    while (true) {
      std::vector<int> cls;
      for (int a : args) cls.push_back(h[static_cast<size_t>(a)]);
      if (!T.defined(op, cls)) {
        R.obstruction = "product of generators undefined for " + O.op_name(op);
        return R;
      }
      if (T.apply(op, cls) != h[static_cast<size_t>(B.apply(op, args))]) {
        R.obstruction = "generator leg is not a homomorphism on " + O.op_name(op);
        return R;
      }
      int i = n - 1;
      while (i >= 0 && args[static_cast<size_t>(i)] + 1 == B.carrier_of(0)) args[static_cast<size_t>(i--)] = 0;
      if (i < 0) break;
      ++args[static_cast<size_t>(i)];
    }
  }
  R.match = true;
  return R;
}

// ---------------------------------------------------------------------------
// Unit triangle: applying a P-operation to generators and pushing forward
// along p agree inside the free algebra.

inline LawReport unit_triangle(const OperadMorphism& p, const AlgebraTable& A,
                               const FreeAlgebra& FA) {
  LawReport rep;
  rep.subject = "unit triangle for " + FA.alg.name;
  const OperadSpec& P = *p.source;
  std::vector<std::vector<int>> eta;
  for (int c = 0; c < P.num_colors(); ++c) eta.push_back(generator_leg(FA, c));
  for (int psi = 0; psi < P.num_ops(); ++psi) {
    int n = P.arity(psi);
    if (n > FA.alg.L) continue;
    const std::vector<int>& prof = P.profile(psi);
    std::vector<int> sizes;
    for (int c : prof) sizes.push_back(A.carrier_of(c));
    ProductIndexer pix(sizes);
    for (long long e = 0; e < pix.total; ++e) {
      std::vector<int> a = pix.unflatten(e);
      std::vector<int> cls;
      for (int i = 0; i < n; ++i)
        cls.push_back(eta[static_cast<size_t>(prof[static_cast<size_t>(i)])][static_cast<size_t>(a[static_cast<size_t>(i)])]);
      ++rep.checked;
      if (FA.alg.apply(p.map_op(psi), cls) !=
          eta[static_cast<size_t>(P.out(psi))][static_cast<size_t>(A.apply(psi, a))])
        rep.note("triangle fails on " + P.op_name(psi));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Functoriality: a map of P-algebras induces a map of free algebras, defined
// on every member and checked to be well-defined and a homomorphism.

struct InducedMap {
  std::vector<int> cls;  // class of FA -> class of FB
  LawReport report;
};

inline InducedMap induced_map(const FreeAlgebra& FA, const FreeAlgebra& FB,
                              const AlgebraMap& g, const AlgebraTable& A,
                              const AlgebraTable& B) {
  InducedMap R;
  R.report.subject = "induced map " + FA.alg.name + " -> " + FB.alg.name;
  require(FA.env.p.source->signature == FB.env.p.source->signature &&
              FA.env.p.target->signature == FB.env.p.target->signature &&
              FA.env.p.color_map == FB.env.p.color_map &&
              FA.env.p.op_map == FB.env.p.op_map && FA.alg.L == FB.alg.L,
          ErrorKind::structural, "free algebras live over different maps");
  R.cls.assign(static_cast<size_t>(FA.alg.num_classes), -1);
  for (int c = 0; c < FA.alg.num_classes; ++c) {
    for (const ElemTag& m : FA.alg.members[static_cast<size_t>(c)]) {
      if (m.synthetic()) continue;
      const EnvObject& o = FA.env.obj(FA.diag.obj_of[static_cast<size_t>(m.node)]);
      std::vector<int> asz, bsz;
      for (int col : o.colors) {
        asz.push_back(A.carrier_of(col));
        bsz.push_back(B.carrier_of(col));
      }
      ProductIndexer ai(asz), bi(bsz);
      std::vector<int> vals = ai.unflatten(m.elem);
      std::vector<int> img(vals.size());
      for (size_t i = 0; i < vals.size(); ++i)
        img[i] = g.apply(o.colors[i], vals[i]);
      int cls = FB.colim.at_L.leg(m.node, static_cast<int>(bi.flatten(img)));
      ++R.report.checked;
      int& slot = R.cls[static_cast<size_t>(c)];
      if (slot < 0) slot = cls;
      else if (slot != cls) {
        R.report.note("image of class " + FA.alg.label[static_cast<size_t>(c)] +
                      " is not well-defined");
        return R;
      }
    }
    if (R.cls[static_cast<size_t>(c)] < 0) {
      if (pointed(FB.alg.kind)) R.cls[static_cast<size_t>(c)] = FB.alg.basepoint_class();
      else {
        R.report.note("class without members cannot be mapped");
        return R;
      }
    }
  }
  for (const auto& [key, res] : FA.alg.ops) {
    std::vector<int> mapped;
    for (int c : key.second) mapped.push_back(R.cls[static_cast<size_t>(c)]);
    ++R.report.checked;
    if (!FB.alg.defined(key.first, mapped) ||
        FB.alg.apply(key.first, mapped) != R.cls[static_cast<size_t>(res)])
      R.report.note("induced map is not a homomorphism on " +
                    FA.alg.operad->op_name(key.first));
  }
  return R;
}

// ---------------------------------------------------------------------------
// Adjunction: maps out of the free algebra restrict bijectively to maps of
// the generators. Every restricted map is extended by force (classes are
// products of their members), and the extension is accepted only when it is
// consistent on every member and a homomorphism on every defined product.

struct AdjunctionReport {
  bool conclusive = false;
  int required_L = 2;
  long long restricted_count = 0;
  long long algebra_count = 0;
  bool match = false;
  std::string note;
};

// Evaluate every member of every class through a generator assignment g and
// the operations of B. Returns false when some class evaluates inconsistently
// or the resulting map fails to be a homomorphism; otherwise h is the unique
// algebra map restricting to g.
inline bool forced_extension(const FreeAlgebra& FA, const AlgebraTable& A,
                             const AlgebraTable& B, const AlgebraMap& g,
                             std::vector<int>& h) {
  const TruncatedAlgebra& T = FA.alg;
  h.assign(static_cast<size_t>(T.num_classes), -1);
  for (int c = 0; c < T.num_classes; ++c) {
    for (const ElemTag& m : T.members[static_cast<size_t>(c)]) {
      if (m.synthetic()) {
        h[static_cast<size_t>(c)] = 0;
        continue;
      }
      const EnvObject& o = FA.env.obj(FA.diag.obj_of[static_cast<size_t>(m.node)]);
      std::vector<int> sizes;
      for (int col : o.colors) sizes.push_back(A.carrier_of(col));
      ProductIndexer pix(sizes);
      std::vector<int> vals = pix.unflatten(m.elem);
      std::vector<int> args(vals.size());
      for (size_t i = 0; i < vals.size(); ++i)
        args[i] = g.apply(o.colors[i], vals[i]);
      int v = B.apply(o.op, args);
      if (h[static_cast<size_t>(c)] < 0) h[static_cast<size_t>(c)] = v;
      else if (h[static_cast<size_t>(c)] != v)
        return false;
    }
  }
  if (pointed(B.kind) && T.num_classes > 0 && h[static_cast<size_t>(T.basepoint_class())] != 0)
    return false;
  for (const auto& [key, res] : T.ops) {
    std::vector<int> args;
    for (int c : key.second) args.push_back(h[static_cast<size_t>(c)]);
    if (B.apply(key.first, args) != h[static_cast<size_t>(res)]) return false;
  }
  return true;
}

inline AdjunctionReport adjunction_check(const OperadMorphism& p, const AlgebraTable& A,
                                         const AlgebraTable& B, const FreeAlgebra& FA) {
  AdjunctionReport R;
  require(B.operad->signature == p.target->signature, ErrorKind::structural,
          "comparison algebra is not over the target operad");
  require(A.kind == B.kind, ErrorKind::structural, "algebras of different kinds");
  const TruncatedAlgebra& T = FA.alg;

  std::vector<AlgebraMap> gs = enumerate_algebra_maps(A, restrict_along(p, B));
  R.restricted_count = static_cast<long long>(gs.size());

  std::vector<int> h;
  for (const AlgebraMap& g : gs)
    if (forced_extension(FA, A, B, g, h)) ++R.algebra_count;

  if (T.L < R.required_L) {
    R.note = "truncation level " + std::to_string(T.L) +
             " cannot see the relations; level " + std::to_string(R.required_L) +
             " is required";
    return R;
  }
  R.conclusive = true;
  if (!T.stabilized)
    R.note = "counts compare maps from the level-" + std::to_string(T.L) +
             " truncation; the colimit has not stabilized yet";
  R.match = R.restricted_count == R.algebra_count;
  return R;
}

// ---------------------------------------------------------------------------
// Colimit universal property: algebra maps out of the truncation (found by
// exhaustive search, bound permitting) correspond to natural families on the
// extended diagram whose components are forced by the tensor decomposition.

struct UniversalReport {
  bool conclusive = false;
  bool match = false;
  long long map_count = 0;
  long long transformation_count = 0;
  std::string note;
};

inline UniversalReport colim_universal_check(const FreeAlgebra& FA, const AlgebraTable& A,
                                             const AlgebraTable& B, long long bound = 200000) {
  UniversalReport R;
  const TruncatedAlgebra& T = FA.alg;
  require(B.operad->signature == T.operad->signature, ErrorKind::structural,
          "comparison algebra is not over the target operad");
  require(B.kind == A.kind, ErrorKind::structural, "algebras of different kinds");
  int bsize = B.carrier_of(0);

  long long total = 1;
  for (int c = 0; c < T.num_classes; ++c) {
    total *= bsize;
    if (total > bound) {
      R.note = "search bound exceeded: " + std::to_string(bsize) + "^" +
               std::to_string(T.num_classes) + " candidate maps";
      return R;
    }
  }
  int bp = pointed(B.kind) && T.num_classes > 0 ? T.basepoint_class() : -1;
  if (T.num_classes == 0) {
    R.map_count = 1;  // the empty map
  } else if (bsize > 0) {
    std::vector<int> h(static_cast<size_t>(T.num_classes), 0);
    while (true) {
      bool ok = bp < 0 || h[static_cast<size_t>(bp)] == 0;
      if (ok)
        for (const auto& [key, res] : T.ops) {
          std::vector<int> args;
          for (int c : key.second) args.push_back(h[static_cast<size_t>(c)]);
          if (B.apply(key.first, args) != h[static_cast<size_t>(res)]) {
            ok = false;
            break;
          }
        }
      if (ok) ++R.map_count;
      int i = T.num_classes - 1;
      while (i >= 0 && h[static_cast<size_t>(i)] + 1 == bsize) h[static_cast<size_t>(i--)] = 0;
      if (i < 0) break;
      ++h[static_cast<size_t>(i)];
    }
  }

  // right side: candidate generator assignments, each inducing the forced
  // family t_x(a) = B(op_x)(g a), tested for naturality against every
  // morphism between retained objects
  const OperadSpec& P = *FA.env.p.source;
  std::vector<int> gsizes;
  long long gtotal = 1;
  for (int c = 0; c < P.num_colors(); ++c) {
    for (int i = 0; i < A.carrier_of(c); ++i) {
      gsizes.push_back(bsize);
      gtotal *= bsize;
      if (gtotal > bound) {
        R.note = "search bound exceeded on generator assignments";
        return R;
      }
    }
  }
  std::vector<int> offset(static_cast<size_t>(P.num_colors()), 0);
  for (int c = 1; c < P.num_colors(); ++c)
    offset[static_cast<size_t>(c)] = offset[static_cast<size_t>(c - 1)] + A.carrier_of(c - 1);

  std::vector<std::pair<int, int>> retained;  // (diagram node, envelope object)
  for (int x = 0; x < FA.env.num_objects(); ++x)
    if (FA.env.grade(x) <= T.L && FA.diag.node_of[static_cast<size_t>(x)] >= 0)
      retained.push_back({FA.diag.node_of[static_cast<size_t>(x)], x});

  // every morphism between retained objects, realized once as an element map
  struct Edge {
    int src, dst;
    std::vector<int> map;
  };
  std::vector<Edge> edges;
  for (const auto& [sn, sx] : retained)
    for (const auto& [dn, dx] : retained)
      for (const EnvMorphism& f : FA.env.hom(sx, dx))
        edges.push_back({sn, dn, morphism_map(FA.env, A, f)});

  bool any_elem = false;
  for (const auto& pr : retained) {
    long long sz = 1;
    for (int col : FA.env.obj(pr.second).colors) sz *= A.carrier_of(col);
    if (sz > 0) any_elem = true;
  }

  if (bsize == 0) {
    R.transformation_count = any_elem ? 0 : 1;
  } else {
    std::vector<int> g(gsizes.size(), 0);
    while (true) {
      bool ok = true;
      if (pointed(B.kind))
        for (int c = 0; c < P.num_colors() && ok; ++c)
          if (A.carrier_of(c) > 0 && g[static_cast<size_t>(offset[static_cast<size_t>(c)])] != 0)
            ok = false;
      std::vector<std::vector<int>> t(FA.diag.obj_of.size());
      if (ok) {
        for (const auto& [node, x] : retained) {
          const EnvObject& o = FA.env.obj(x);
          std::vector<int> sizes;
          for (int col : o.colors) sizes.push_back(A.carrier_of(col));
          ProductIndexer pix(sizes);
          std::vector<int>& row = t[static_cast<size_t>(node)];
          row.resize(static_cast<size_t>(pix.total));
          for (long long e = 0; e < pix.total; ++e) {
            std::vector<int> a = pix.unflatten(e);
            std::vector<int> args(a.size());
            for (size_t i = 0; i < a.size(); ++i)
              args[i] = g[static_cast<size_t>(offset[static_cast<size_t>(o.colors[i])] + a[i])];
            row[static_cast<size_t>(e)] = B.apply(o.op, args);
          }
        }
        for (const Edge& ed : edges) {
          const std::vector<int>& ts = t[static_cast<size_t>(ed.src)];
          const std::vector<int>& td = t[static_cast<size_t>(ed.dst)];
          for (size_t e = 0; e < ed.map.size(); ++e)
            if (td[static_cast<size_t>(ed.map[e])] != ts[e]) {
              ok = false;
              break;
            }
          if (!ok) break;
        }
      }
      if (ok) ++R.transformation_count;
      if (g.empty()) break;
      int i = static_cast<int>(g.size()) - 1;
      while (i >= 0 && g[static_cast<size_t>(i)] + 1 == bsize) g[static_cast<size_t>(i--)] = 0;
      if (i < 0) break;
      ++g[static_cast<size_t>(i)];
    }
  }

  R.conclusive = true;
  R.match = R.map_count == R.transformation_count;
  return R;
}

}  // namespace envlab
