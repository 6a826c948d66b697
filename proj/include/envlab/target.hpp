#pragma once

// Symmetric monoidal targets: finite sets and finite pointed sets under the
// cartesian product, with colimits delegated to the diagram engine. Algebra
// tables over an operad, algebra maps, the slice monoidal construction, and
// the extensional tensor-vs-colimit compatibility check.
//
// Elements are 0..size-1; in the pointed case the basepoint is element 0.
// Products are flattened row-major with the first factor slowest.

#include <map>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "operad.hpp"
#include "util.hpp"

namespace envlab {

enum class TargetKind { finset, ptdfinset };

inline std::string target_name(TargetKind k) {
  return k == TargetKind::finset ? "finset" : "ptdfinset";
}
inline bool pointed(TargetKind k) { return k == TargetKind::ptdfinset; }

// Does tensoring commute with colimits of this shape in the target?
// Finite sets: always. Pointed finite sets: exactly when the shape carries a
// weak-contractibility certificate. (The extensional verification for
// concrete diagrams is verify_tensor_colimit_compat below.)
inline bool shape_compatible(TargetKind k, const FiniteCategory& shape,
                             ContractReport* why = nullptr) {
  if (k == TargetKind::finset) {
    if (why) *why = ContractReport{Contractibility::certified, {"finite sets: all shapes"}};
    return true;
  }
  ContractReport r = weak_contractibility(shape);
  if (why) *why = r;
  return r.certified();
}

struct TensorColimReport {
  int colim_then_tensor = 0;  // |colim(D ⊗ A)|  (tensor applied nodewise first)
  int tensor_then_colim = 0;  // |colim(D)| · |A|
  bool injective = false, surjective = false;
  bool bijective() const { return injective && surjective; }
};

// canonical map colim(D ⊗ const A) -> colim(D) ⊗ A, compared elementwise
inline TensorColimReport verify_tensor_colimit_compat(const SetDiagram& d, int a_size) {
  SetDiagram da;
  da.pointed = d.pointed;
  for (size_t i = 0; i < d.sizes.size(); ++i)
    da.add_node(d.sizes[i] * a_size, d.grades[i], d.node_names[i]);
  for (const auto& e : d.edges) {
    std::vector<int> m(static_cast<size_t>(d.sizes[static_cast<size_t>(e.src)] * a_size));
    for (int x = 0; x < d.sizes[static_cast<size_t>(e.src)]; ++x)
      for (int t = 0; t < a_size; ++t)
        m[static_cast<size_t>(x * a_size + t)] = e.map[static_cast<size_t>(x)] * a_size + t;
    da.add_edge(e.src, e.dst, m);
  }
  Colimit left = colimit_set(da);
  Colimit right = colimit_set(d);
  TensorColimReport rep;
  rep.colim_then_tensor = left.num_classes;
  rep.tensor_then_colim = right.num_classes * a_size;
  // image of each left class under the canonical map; well-definedness holds
  // by construction (edges are f × id), so only count the image
  std::set<std::pair<int, int>> image;
  bool injective = true;
  for (int cls = 0; cls < left.num_classes; ++cls) {
    std::set<std::pair<int, int>> targets;
    for (const auto& tag : left.members[static_cast<size_t>(cls)]) {
      if (tag.synthetic()) {
        targets.insert({-1, 0});  // basepoint class of the empty pointed colimit
        continue;
      }
      int x = tag.elem / a_size, t = tag.elem % a_size;
      targets.insert({right.leg(tag.node, x), t});
    }
    require(targets.size() == 1, ErrorKind::internal, "tensor comparison map ill-defined");
    if (!image.insert(*targets.begin()).second) injective = false;
  }
  rep.injective = injective;
  rep.surjective = static_cast<int>(image.size()) == rep.tensor_then_colim;
  return rep;
}

// ---------------------------------------------------------------------------
// Algebras.

struct AlgebraTable {
  std::string name = "A";
  OperadPtr operad;
  TargetKind kind = TargetKind::finset;
  std::vector<int> carrier;                 // size per color
  std::map<int, std::vector<int>> action;   // op -> flat table over the profile product

  int carrier_of(int color) const { return carrier[static_cast<size_t>(color)]; }

  ProductIndexer args_indexer(int op) const {
    std::vector<int> sizes;
    for (int c : operad->profile(op)) sizes.push_back(carrier_of(c));
    return ProductIndexer(sizes);
  }

  int apply(int op, const std::vector<int>& args) const {
    auto it = action.find(op);
    require(it != action.end(), ErrorKind::structural,
            name + ": no action table for " + operad->op_name(op));
    return it->second[static_cast<size_t>(args_indexer(op).flatten(args))];
  }

  void set_action_pointwise(int op, const std::function<int(const std::vector<int>&)>& f) {
    ProductIndexer ix = args_indexer(op);
    std::vector<int> table(static_cast<size_t>(ix.total));
    for (long long i = 0; i < ix.total; ++i) table[static_cast<size_t>(i)] = f(ix.unflatten(i));
    action[op] = table;
  }
};

// Exhaustive algebra laws. law_cap bounds the total arity of gamma instances
// checked (default: the operad's own cap); the subject line records it.
inline LawReport algebra_check(const AlgebraTable& A, int law_cap = -1) {
  const OperadSpec& O = *A.operad;
  if (law_cap < 0) law_cap = O.arity_cap;
  LawReport rep;
  rep.subject = "algebra " + A.name + " over " + O.name +
                (law_cap == O.arity_cap ? "" : " (law instances with arities to " + std::to_string(law_cap) + ")");
  require(static_cast<int>(A.carrier.size()) == O.num_colors(), ErrorKind::structural,
          A.name + ": carrier count mismatch");
  for (int op = 0; op < O.num_ops(); ++op) {
    auto it = A.action.find(op);
    require(it != A.action.end(), ErrorKind::structural,
            A.name + ": missing action for " + O.op_name(op));
    ProductIndexer ix = A.args_indexer(op);
    require(static_cast<long long>(it->second.size()) == ix.total, ErrorKind::structural,
            A.name + ": action table size mismatch for " + O.op_name(op));
    for (int v : it->second) {
      ++rep.checked;
      if (v < 0 || v >= A.carrier_of(O.out(op))) {
        rep.note("action value out of range for " + O.op_name(op));
        break;
      }
    }
  }
  if (!rep.ok()) return rep;

  // units act as identity
  for (int c = 0; c < O.num_colors(); ++c)
    for (int x = 0; x < A.carrier_of(c); ++x) {
      ++rep.checked;
      if (A.apply(O.unit(c), {x}) != x)
        rep.note("unit does not act as identity on color " + O.colors[static_cast<size_t>(c)]);
    }

  // pointed targets: every operation sends the all-basepoint tuple to the
  // basepoint (maps of pointed sets); in particular nullary ops pick it
  if (pointed(A.kind))
    for (int op = 0; op < O.num_ops(); ++op) {
      ++rep.checked;
      if (A.apply(op, std::vector<int>(static_cast<size_t>(O.arity(op)), 0)) != 0)
        rep.note("operation " + O.op_name(op) + " is not basepoint-preserving");
    }

  // equivariance: apply(act(op,σ), a) = apply(op, a∘σ)
  for (int op = 0; op < O.num_ops(); ++op) {
    int n = O.arity(op);
    if (n > law_cap) continue;
    for (const auto& s : all_perms(n)) {
      int im = O.act(op, s);
      ProductIndexer ix = A.args_indexer(im);
      for (long long i = 0; i < ix.total; ++i) {
        ++rep.checked;
        std::vector<int> a = ix.unflatten(i);  // arguments fed to act(op,σ)
        std::vector<int> pulled(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k)
          pulled[static_cast<size_t>(k)] = a[static_cast<size_t>(s[static_cast<size_t>(k)])];
        if (A.apply(im, a) != A.apply(op, pulled)) {
          rep.note("equivariance fails on " + O.op_name(op));
          break;
        }
      }
      if (rep.violations.size() > 25) return rep;
    }
  }
  if (!rep.ok()) return rep;

  // gamma-compatibility: apply(γ(op;ψ), concat args) = apply(op, [apply(ψ_i, block_i)])
  for (int op = 0; op < O.num_ops(); ++op) {
    int n = O.arity(op);
    if (n > law_cap) continue;
    std::vector<int> pattern;
    detail::arity_patterns(n, law_cap, pattern, [&](const std::vector<int>& ms) {
      std::vector<int> tuple;
      std::function<void(int)> rec = [&](int slot) {
        if (slot == n) {
          int g = O.gamma(op, tuple);
          ProductIndexer ix = A.args_indexer(g);
          for (long long i = 0; i < ix.total; ++i) {
            ++rep.checked;
            std::vector<int> flat = ix.unflatten(i);
            std::vector<int> outer;
            size_t pos = 0;
            for (int psi : tuple) {
              std::vector<int> block(flat.begin() + static_cast<long>(pos),
                                     flat.begin() + static_cast<long>(pos) + O.arity(psi));
              pos += static_cast<size_t>(O.arity(psi));
              outer.push_back(A.apply(psi, block));
            }
            if (A.apply(g, flat) != A.apply(op, outer)) {
              rep.note("gamma compatibility fails on " + O.op_name(op));
              break;
            }
          }
          return;
        }
        for (int psi : O.ops_with(O.profile(op)[static_cast<size_t>(slot)], ms[static_cast<size_t>(slot)])) {
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
// Algebra maps.

struct AlgebraMap {
  std::string name = "h";
  std::vector<std::vector<int>> component;  // per color: carrier map

  int apply(int color, int x) const { return component[static_cast<size_t>(color)][static_cast<size_t>(x)]; }
};

inline LawReport check_algebra_map(const AlgebraTable& A, const AlgebraTable& B,
                                   const AlgebraMap& h) {
  LawReport rep;
  rep.subject = "algebra map " + A.name + " -> " + B.name;
  require(A.operad->signature == B.operad->signature || A.operad.get() == B.operad.get(),
          ErrorKind::structural, "algebra map endpoints over different operads");
  require(A.kind == B.kind, ErrorKind::structural, "algebra map endpoints in different targets");
  const OperadSpec& O = *A.operad;
  for (int c = 0; c < O.num_colors(); ++c) {
    require(static_cast<int>(h.component[static_cast<size_t>(c)].size()) == A.carrier_of(c),
            ErrorKind::structural, "component size mismatch");
    for (int v : h.component[static_cast<size_t>(c)])
      require(v >= 0 && v < B.carrier_of(c), ErrorKind::structural, "component value out of range");
  }
  if (pointed(A.kind))
    for (int c = 0; c < O.num_colors(); ++c) {
      ++rep.checked;
      if (h.apply(c, 0) != 0) rep.note("basepoint not preserved on color " + std::to_string(c));
    }
  for (int op = 0; op < O.num_ops(); ++op) {
    ProductIndexer ix = A.args_indexer(op);
    for (long long i = 0; i < ix.total; ++i) {
      ++rep.checked;
      std::vector<int> a = ix.unflatten(i);
      std::vector<int> ha(a.size());
      for (size_t k = 0; k < a.size(); ++k)
        ha[k] = h.apply(O.profile(op)[k], a[static_cast<size_t>(k)]);
      if (h.apply(O.out(op), A.apply(op, a)) != B.apply(op, ha)) {
        rep.note("does not commute with " + O.op_name(op));
        if (rep.violations.size() > 25) return rep;
      }
    }
  }
  return rep;
}

// brute-force enumeration of all algebra maps A -> B. Candidates are
// pre-filtered on operations of arity <= 2 (cheap), then survivors pass the
// full exhaustive check, so the result is exact.
inline std::vector<AlgebraMap> enumerate_algebra_maps(const AlgebraTable& A,
                                                      const AlgebraTable& B) {
  const OperadSpec& O = *A.operad;
  long long total = 1;
  std::vector<std::vector<int>> comp;
  for (int c = 0; c < O.num_colors(); ++c) {
    comp.push_back(std::vector<int>(static_cast<size_t>(A.carrier_of(c)), 0));
    for (int x = 0; x < A.carrier_of(c); ++x) {
      (void)x;
      total *= B.carrier_of(c);
      require(total <= 40'000'000LL, ErrorKind::cap, "algebra map enumeration too large");
    }
  }
  std::vector<int> low_ops;
  for (int op = 0; op < O.num_ops(); ++op)
    if (O.arity(op) <= 2) low_ops.push_back(op);
  std::vector<AlgebraMap> found;
  std::function<void(int, int)> rec = [&](int color, int x) {
    if (color == O.num_colors()) {
      AlgebraMap h;
      h.component = comp;
      if (pointed(A.kind))
        for (int c = 0; c < O.num_colors(); ++c)
          if (h.apply(c, 0) != 0) return;
      for (int op : low_ops) {
        ProductIndexer ix = A.args_indexer(op);
        for (long long i = 0; i < ix.total; ++i) {
          std::vector<int> a = ix.unflatten(i);
          std::vector<int> ha(a.size());
          for (size_t k = 0; k < a.size(); ++k)
            ha[k] = h.apply(O.profile(op)[k], a[static_cast<size_t>(k)]);
          if (h.apply(O.out(op), A.apply(op, a)) != B.apply(op, ha)) return;
        }
      }
      if (check_algebra_map(A, B, h).ok()) found.push_back(h);
      return;
    }
    if (x == A.carrier_of(color)) {
      rec(color + 1, 0);
      return;
    }
    for (int v = 0; v < B.carrier_of(color); ++v) {
      comp[static_cast<size_t>(color)][static_cast<size_t>(x)] = v;
      rec(color, x + 1);
    }
  };
  rec(0, 0);
  return found;
}

inline bool algebras_isomorphic(const AlgebraTable& A, const AlgebraTable& B) {
  if (A.carrier != B.carrier) {
    // sizes must agree colorwise
    for (size_t c = 0; c < A.carrier.size(); ++c)
      if (A.carrier[c] != B.carrier[c]) return false;
  }
  for (const auto& h : enumerate_algebra_maps(A, B)) {
    bool bij = true;
    for (size_t c = 0; c < A.carrier.size(); ++c) {
      std::set<int> img(h.component[c].begin(), h.component[c].end());
      if (static_cast<int>(img.size()) != A.carrier[c]) bij = false;
    }
    if (bij) return true;
  }
  return false;
}

// restriction of an O-algebra to a P-algebra along p: P -> O
inline AlgebraTable restrict_along(const OperadMorphism& p, const AlgebraTable& B) {
  AlgebraTable A;
  A.name = B.name + "|" + p.source->name;
  A.operad = p.source;
  A.kind = B.kind;
  for (int c = 0; c < p.source->num_colors(); ++c)
    A.carrier.push_back(B.carrier_of(p.map_color(c)));
  for (int op = 0; op < p.source->num_ops(); ++op)
    A.action[op] = B.action.at(p.map_op(op));
  return A;
}

// componentwise product of algebras over the same operad
inline AlgebraTable algebra_product(const AlgebraTable& A, const AlgebraTable& B) {
  AlgebraTable P;
  P.name = A.name + "x" + B.name;
  P.operad = A.operad;
  P.kind = A.kind;
  const OperadSpec& O = *A.operad;
  for (int c = 0; c < O.num_colors(); ++c) P.carrier.push_back(A.carrier_of(c) * B.carrier_of(c));
  for (int op = 0; op < O.num_ops(); ++op) {
    P.set_action_pointwise(op, [&](const std::vector<int>& args) {
      std::vector<int> a, b;
      for (size_t i = 0; i < args.size(); ++i) {
        int bc = B.carrier_of(O.profile(op)[i]);
        a.push_back(args[i] / bc);
        b.push_back(args[i] % bc);
      }
      return A.apply(op, a) * B.carrier_of(O.out(op)) + B.apply(op, b);
    });
  }
  return P;
}

// ---------------------------------------------------------------------------
// Builders for common algebra tables.

// a (pointed) set as an algebra over the nullary-extension operad: the
// nullary op picks the point, the unary op is the identity
inline AlgebraTable e0_algebra(OperadPtr e0, int size, TargetKind kind) {
  AlgebraTable A;
  A.name = "set" + std::to_string(size);
  A.operad = e0;
  A.kind = kind;
  A.carrier = {size};
  for (int op = 0; op < e0->num_ops(); ++op) {
    if (e0->arity(op) == 0)
      A.action[op] = {0};  // the chosen point; basepoint in the pointed case
    else
      A.set_action_pointwise(op, [](const std::vector<int>& a) { return a[0]; });
  }
  return A;
}

inline AlgebraTable triv_algebra(OperadPtr triv, int size, TargetKind kind) {
  AlgebraTable A;
  A.name = "set" + std::to_string(size);
  A.operad = triv;
  A.kind = kind;
  A.carrier = {size};
  A.set_action_pointwise(triv->unit(0), [](const std::vector<int>& a) { return a[0]; });
  return A;
}

// a monoid (mult table + unit element) as an algebra over assoc: the word
// operation w multiplies arguments in word order. For the commutative operad
// the same data works when the table is commutative (order irrelevant).
inline AlgebraTable monoid_algebra(OperadPtr O, const std::vector<std::vector<int>>& mult,
                                   int unit_elem, TargetKind kind, const std::string& nm) {
  AlgebraTable A;
  A.name = nm;
  A.operad = O;
  A.kind = kind;
  int n = static_cast<int>(mult.size());
  A.carrier = {n};
  require(!pointed(kind) || unit_elem == 0, ErrorKind::structural,
          nm + ": pointed monoid algebras need the unit at the basepoint");
  bool word_semantics = O->signature.rfind("assoc:", 0) == 0;
  for (int op = 0; op < O->num_ops(); ++op) {
    A.set_action_pointwise(op, [&](const std::vector<int>& args) {
      int acc = unit_elem;
      if (word_semantics) {
        // multiply in the order the word dictates (ops named "w" + digits)
        const std::string& w = O->op_name(op);
        for (size_t k = 1; k < w.size(); ++k)
          acc = mult[static_cast<size_t>(acc)][static_cast<size_t>(args[static_cast<size_t>(w[k] - '0')])];
      } else {
        for (int a : args) acc = mult[static_cast<size_t>(acc)][static_cast<size_t>(a)];
      }
      return acc;
    });
  }
  return A;
}

// ---------------------------------------------------------------------------
// Slice monoidal construction over a commutative algebra A in the target:
// objects are sets over A's carrier; tensor multiplies the structure maps.

struct SliceObj {
  int size = 0;
  std::vector<int> to_a;
};

struct SliceTarget {
  AlgebraTable A;  // over a commutative operad
  int mul_op = -1, unit_op = -1;

  static SliceTarget over(const AlgebraTable& A) {
    SliceTarget S;
    S.A = A;
    const OperadSpec& O = *A.operad;
    const auto& mul2 = O.mul({0, 0}, 0);
    const auto& mul0 = O.mul({}, 0);
    require(mul2.size() == 1 && mul0.size() == 1, ErrorKind::structural,
            "slice construction needs a single binary and nullary operation");
    S.mul_op = mul2[0];
    S.unit_op = mul0[0];
    return S;
  }

  SliceObj unit() const { return {1, {A.apply(unit_op, {})}}; }

  SliceObj tensor(const SliceObj& x, const SliceObj& y) const {
    SliceObj t;
    t.size = x.size * y.size;
    t.to_a.resize(static_cast<size_t>(t.size));
    for (int i = 0; i < x.size; ++i)
      for (int j = 0; j < y.size; ++j)
        t.to_a[static_cast<size_t>(i * y.size + j)] =
            A.apply(mul_op, {x.to_a[static_cast<size_t>(i)], y.to_a[static_cast<size_t>(j)]});
    return t;
  }
};

// morphisms (X,x) -> (Y,y) are maps over A; the projection drops structure
inline bool is_slice_morphism(const SliceObj& x, const SliceObj& y, const std::vector<int>& f) {
  for (int i = 0; i < x.size; ++i)
    if (y.to_a[static_cast<size_t>(f[static_cast<size_t>(i)])] != x.to_a[static_cast<size_t>(i)]) return false;
  return true;
}

// unit/associativity of the slice tensor, strong monoidality and
// conservativity of the projection — checked elementwise over all slice
// objects with carrier sizes <= bound (structure maps enumerated exhaustively)
inline LawReport check_slice_monoidal(const SliceTarget& S, int bound) {
  LawReport rep;
  rep.subject = "slice tensor over " + S.A.name;
  int a = S.A.carrier_of(0);
  std::vector<SliceObj> objs;
  for (int sz = 0; sz <= bound; ++sz) {
    std::vector<int> f(static_cast<size_t>(sz), 0);
    while (true) {
      objs.push_back({sz, f});
      int i = sz - 1;
      while (i >= 0 && f[static_cast<size_t>(i)] + 1 >= a) f[static_cast<size_t>(i--)] = 0;
      if (i < 0) break;
      ++f[static_cast<size_t>(i)];
    }
  }
  auto eq = [](const SliceObj& u, const SliceObj& v) {
    return u.size == v.size && u.to_a == v.to_a;
  };
  for (const auto& x : objs) {
    ++rep.checked;
    if (!eq(S.tensor(S.unit(), x), x) || !eq(S.tensor(x, S.unit()), x))
      rep.note("unit law fails");
    for (const auto& y : objs) {
      // symmetry: structure maps agree under the swap bijection
      SliceObj xy = S.tensor(x, y), yx = S.tensor(y, x);
      ++rep.checked;
      for (int i = 0; i < x.size; ++i)
        for (int j = 0; j < y.size; ++j)
          if (xy.to_a[static_cast<size_t>(i * y.size + j)] !=
              yx.to_a[static_cast<size_t>(j * x.size + i)]) {
            rep.note("symmetry fails");
            i = x.size;
            break;
          }
      for (const auto& z : objs) {
        ++rep.checked;
        SliceObj l = S.tensor(S.tensor(x, y), z), r = S.tensor(x, S.tensor(y, z));
        if (!eq(l, r)) rep.note("associativity fails");  // same flattening order
      }
    }
  }
  // conservativity: bijective slice morphisms have slice inverses
  for (const auto& x : objs)
    for (const auto& y : objs) {
      if (x.size != y.size || x.size == 0) continue;
      for (const auto& f : all_perms(x.size)) {
        if (!is_slice_morphism(x, y, f)) continue;
        ++rep.checked;
        if (!is_slice_morphism(y, x, invert_perm(f)))
          rep.note("projection not conservative");
      }
    }
  return rep;
}

}  // namespace envlab
