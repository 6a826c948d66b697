#pragma once

// Finite categories, functors, set-valued diagrams, colimits via union-find,
// slices, an extensional finality check, and a certificate-based weak
// contractibility search.

#include <climits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "util.hpp"

namespace envlab {

// ---------------------------------------------------------------------------
// FiniteCategory: objects and morphisms by id, explicit identity and
// composition tables. Objects carry a grade (0 by default) so graded
// categories are the same type plus truncate().

struct FiniteCategory {
  struct MorData {
    int src = -1, dst = -1;
    std::string name;
  };

  std::string name = "category";
  std::vector<std::string> objects;
  std::vector<int> grades;
  std::vector<MorData> mors;
  std::vector<int> identity_;
  std::map<std::pair<int, int>, int> comp_;            // (g, f) -> g∘f
  std::map<std::pair<int, int>, std::vector<int>> hom_;  // (src, dst) -> mor ids

  int add_object(const std::string& obj_name, int grade = 0) {
    objects.push_back(obj_name);
    grades.push_back(grade);
    identity_.push_back(-1);
    return static_cast<int>(objects.size()) - 1;
  }

  int add_mor(int src, int dst, const std::string& mor_name) {
    require(src >= 0 && src < static_cast<int>(objects.size()) && dst >= 0 &&
                dst < static_cast<int>(objects.size()),
            ErrorKind::structural, name + ": morphism endpoints out of range");
    mors.push_back({src, dst, mor_name});
    int id = static_cast<int>(mors.size()) - 1;
    hom_[{src, dst}].push_back(id);
    return id;
  }

  void set_identity(int obj, int mor) {
    require(mors[static_cast<size_t>(mor)].src == obj && mors[static_cast<size_t>(mor)].dst == obj,
            ErrorKind::structural, name + ": identity endpoints wrong for " + objects[static_cast<size_t>(obj)]);
    identity_[static_cast<size_t>(obj)] = mor;
  }

  int add_identity(int obj) {
    int m = add_mor(obj, obj, "id_" + objects[static_cast<size_t>(obj)]);
    set_identity(obj, m);
    return m;
  }

  void set_comp(int g, int f, int gf) { comp_[{g, f}] = gf; }

  int identity(int obj) const {
    int m = identity_[static_cast<size_t>(obj)];
    require(m >= 0, ErrorKind::structural, name + ": no identity on " + objects[static_cast<size_t>(obj)]);
    return m;
  }

  bool is_identity(int mor) const {
    const auto& m = mors[static_cast<size_t>(mor)];
    return m.src == m.dst && identity_[static_cast<size_t>(m.src)] == mor;
  }

  // g∘f, f applied first.
  int compose(int g, int f) const {
    require(mors[static_cast<size_t>(f)].dst == mors[static_cast<size_t>(g)].src, ErrorKind::structural,
            name + ": composing non-composable pair " + mors[static_cast<size_t>(g)].name + " ∘ " +
                mors[static_cast<size_t>(f)].name);
    auto it = comp_.find({g, f});
    require(it != comp_.end(), ErrorKind::structural,
            name + ": composite undefined for " + mors[static_cast<size_t>(g)].name + " ∘ " +
                mors[static_cast<size_t>(f)].name);
    return it->second;
  }

  const std::vector<int>& hom(int src, int dst) const {
    static const std::vector<int> empty;
    auto it = hom_.find({src, dst});
    return it == hom_.end() ? empty : it->second;
  }

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_mors() const { return static_cast<int>(mors.size()); }

  int src(int mor) const { return mors[static_cast<size_t>(mor)].src; }
  int dst(int mor) const { return mors[static_cast<size_t>(mor)].dst; }

  int max_grade() const {
    int g = 0;
    for (int v : grades) g = std::max(g, v);
    return g;
  }
};

// Full subcategory on objects of grade <= L, with maps back to the original.
struct Truncation {
  FiniteCategory cat;
  std::vector<int> obj_orig;  // new object id -> old
  std::vector<int> mor_orig;  // new morphism id -> old
};

// the full subcategory on a set of objects; fails if not closed under
// composition (cannot happen for genuinely full subcategories)
inline Truncation full_subcategory(const FiniteCategory& C, const std::vector<bool>& keep,
                                   const std::string& nm) {
  Truncation t;
  t.cat.name = nm;
  std::vector<int> new_of_old(static_cast<size_t>(C.num_objects()), -1);
  for (int x = 0; x < C.num_objects(); ++x)
    if (keep[static_cast<size_t>(x)]) {
      new_of_old[static_cast<size_t>(x)] =
          t.cat.add_object(C.objects[static_cast<size_t>(x)], C.grades[static_cast<size_t>(x)]);
      t.obj_orig.push_back(x);
    }
  std::vector<int> new_mor_of_old(static_cast<size_t>(C.num_mors()), -1);
  for (int m = 0; m < C.num_mors(); ++m) {
    int s = new_of_old[static_cast<size_t>(C.src(m))], d = new_of_old[static_cast<size_t>(C.dst(m))];
    if (s < 0 || d < 0) continue;
    new_mor_of_old[static_cast<size_t>(m)] = t.cat.add_mor(s, d, C.mors[static_cast<size_t>(m)].name);
    t.mor_orig.push_back(m);
  }
  for (int x = 0; x < t.cat.num_objects(); ++x)
    t.cat.set_identity(x, new_mor_of_old[static_cast<size_t>(C.identity(t.obj_orig[static_cast<size_t>(x)]))]);
  for (const auto& [pair, gf] : C.comp_) {
    int g = new_mor_of_old[static_cast<size_t>(pair.first)];
    int f = new_mor_of_old[static_cast<size_t>(pair.second)];
    if (g >= 0 && f >= 0) {
      require(new_mor_of_old[static_cast<size_t>(gf)] >= 0, ErrorKind::structural,
              C.name + ": subcategory not closed under composition");
      t.cat.set_comp(g, f, new_mor_of_old[static_cast<size_t>(gf)]);
    }
  }
  return t;
}

inline Truncation truncate(const FiniteCategory& C, int L) {
  Truncation t;
  t.cat.name = C.name + "|<=" + std::to_string(L);
  std::vector<int> new_of_old(static_cast<size_t>(C.num_objects()), -1);
  for (int x = 0; x < C.num_objects(); ++x)
    if (C.grades[static_cast<size_t>(x)] <= L) {
      new_of_old[static_cast<size_t>(x)] =
          t.cat.add_object(C.objects[static_cast<size_t>(x)], C.grades[static_cast<size_t>(x)]);
      t.obj_orig.push_back(x);
    }
  std::vector<int> new_mor_of_old(static_cast<size_t>(C.num_mors()), -1);
  for (int m = 0; m < C.num_mors(); ++m) {
    int s = new_of_old[static_cast<size_t>(C.src(m))], d = new_of_old[static_cast<size_t>(C.dst(m))];
    if (s < 0 || d < 0) continue;
    new_mor_of_old[static_cast<size_t>(m)] = t.cat.add_mor(s, d, C.mors[static_cast<size_t>(m)].name);
    t.mor_orig.push_back(m);
  }
  for (int x = 0; x < t.cat.num_objects(); ++x)
    t.cat.set_identity(x, new_mor_of_old[static_cast<size_t>(C.identity(t.obj_orig[static_cast<size_t>(x)]))]);
  for (const auto& [pair, gf] : C.comp_) {
    int g = new_mor_of_old[static_cast<size_t>(pair.first)];
    int f = new_mor_of_old[static_cast<size_t>(pair.second)];
    if (g >= 0 && f >= 0) {
      require(new_mor_of_old[static_cast<size_t>(gf)] >= 0, ErrorKind::structural,
              C.name + ": truncation not closed under composition");
      t.cat.set_comp(g, f, new_mor_of_old[static_cast<size_t>(gf)]);
    }
  }
  return t;
}

inline LawReport check_category_laws(const FiniteCategory& C) {
  LawReport rep;
  rep.subject = C.name;
  for (int x = 0; x < C.num_objects(); ++x) {
    ++rep.checked;
    if (C.identity_[static_cast<size_t>(x)] < 0) {
      rep.note("object " + C.objects[static_cast<size_t>(x)] + " has no identity");
      continue;
    }
  }
  if (!rep.ok()) return rep;  // unit/assoc checks need identities in place

  auto mname = [&](int m) { return C.mors[static_cast<size_t>(m)].name; };

  // composites exist with correct endpoints; identity is a two-sided unit
  for (int f = 0; f < C.num_mors(); ++f) {
    for (int g = 0; g < C.num_mors(); ++g) {
      if (C.dst(f) != C.src(g)) continue;
      ++rep.checked;
      auto it = C.comp_.find({g, f});
      if (it == C.comp_.end()) {
        rep.note("composite undefined: " + mname(g) + " ∘ " + mname(f));
        continue;
      }
      int gf = it->second;
      if (C.src(gf) != C.src(f) || C.dst(gf) != C.dst(g))
        rep.note("composite endpoints wrong: " + mname(g) + " ∘ " + mname(f));
    }
    int idl = C.identity_[static_cast<size_t>(C.dst(f))], idr = C.identity_[static_cast<size_t>(C.src(f))];
    auto l = C.comp_.find({idl, f});
    auto r = C.comp_.find({f, idr});
    ++rep.checked;
    if (l != C.comp_.end() && l->second != f) rep.note("left unit fails on " + mname(f));
    if (r != C.comp_.end() && r->second != f) rep.note("right unit fails on " + mname(f));
  }
  if (!rep.ok()) return rep;

  // associativity on all composable triples
  for (int f = 0; f < C.num_mors(); ++f)
    for (int g = 0; g < C.num_mors(); ++g) {
      if (C.dst(f) != C.src(g)) continue;
      int gf = C.compose(g, f);
      for (int h = 0; h < C.num_mors(); ++h) {
        if (C.dst(g) != C.src(h)) continue;
        ++rep.checked;
        if (C.compose(h, gf) != C.compose(C.compose(h, g), f))
          rep.note("associativity fails: " + mname(h) + " ∘ " + mname(g) + " ∘ " + mname(f));
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Functors.

struct Functor {
  const FiniteCategory* src = nullptr;
  const FiniteCategory* dst = nullptr;
  std::vector<int> obj_map;
  std::vector<int> mor_map;
};

inline LawReport check_functor_laws(const Functor& F) {
  LawReport rep;
  rep.subject = "functor " + F.src->name + " -> " + F.dst->name;
  const auto& S = *F.src;
  const auto& D = *F.dst;
  for (int m = 0; m < S.num_mors(); ++m) {
    ++rep.checked;
    int fm = F.mor_map[static_cast<size_t>(m)];
    if (D.src(fm) != F.obj_map[static_cast<size_t>(S.src(m))] ||
        D.dst(fm) != F.obj_map[static_cast<size_t>(S.dst(m))])
      rep.note("endpoint mismatch on " + S.mors[static_cast<size_t>(m)].name);
  }
  if (!rep.ok()) return rep;  // composites below assume endpoints line up
  for (int x = 0; x < S.num_objects(); ++x) {
    ++rep.checked;
    if (F.mor_map[static_cast<size_t>(S.identity(x))] !=
        D.identity(F.obj_map[static_cast<size_t>(x)]))
      rep.note("identity not preserved at " + S.objects[static_cast<size_t>(x)]);
  }
  for (int f = 0; f < S.num_mors(); ++f)
    for (int g = 0; g < S.num_mors(); ++g) {
      if (S.dst(f) != S.src(g)) continue;
      ++rep.checked;
      if (F.mor_map[static_cast<size_t>(S.compose(g, f))] !=
          D.compose(F.mor_map[static_cast<size_t>(g)], F.mor_map[static_cast<size_t>(f)]))
        rep.note("composition not preserved on " + S.mors[static_cast<size_t>(g)].name + " ∘ " +
                 S.mors[static_cast<size_t>(f)].name);
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Set-valued diagrams. SetDiagram is the raw form (nodes with sizes and
// generating edges); CatDiagram is a functor C -> Set. Colimits only need the
// raw form, and any set of edges whose composites exhaust the category's
// morphisms generates the same equivalence.

struct DiagramEdge {
  int src = -1, dst = -1;
  std::vector<int> map;  // elementwise
  std::string name;
};

struct SetDiagram {
  std::vector<int> sizes;
  std::vector<int> grades;
  std::vector<std::string> node_names;
  std::vector<DiagramEdge> edges;
  bool pointed = false;
  std::vector<int> basepoints;  // per node when pointed

  int add_node(int size, int grade = 0, const std::string& nm = "", int basepoint = 0) {
    sizes.push_back(size);
    grades.push_back(grade);
    node_names.push_back(nm.empty() ? "n" + std::to_string(sizes.size() - 1) : nm);
    if (pointed) basepoints.push_back(basepoint);
    return static_cast<int>(sizes.size()) - 1;
  }

  void add_edge(int src, int dst, std::vector<int> map, const std::string& nm = "") {
    require(static_cast<int>(map.size()) == sizes[static_cast<size_t>(src)], ErrorKind::structural,
            "edge map size mismatch");
    for (int v : map)
      require(v >= 0 && v < sizes[static_cast<size_t>(dst)], ErrorKind::structural,
              "edge map value out of range");
    edges.push_back({src, dst, std::move(map), nm});
  }
};

struct CatDiagram {
  const FiniteCategory* cat = nullptr;
  std::vector<int> sizes;                   // per object
  std::vector<std::vector<int>> mor_maps;   // per morphism
  bool pointed = false;
  std::vector<int> basepoints;

  SetDiagram to_set_diagram() const {
    SetDiagram d;
    d.pointed = pointed;
    for (int x = 0; x < cat->num_objects(); ++x)
      d.add_node(sizes[static_cast<size_t>(x)], cat->grades[static_cast<size_t>(x)],
                 cat->objects[static_cast<size_t>(x)], pointed ? basepoints[static_cast<size_t>(x)] : 0);
    for (int m = 0; m < cat->num_mors(); ++m) {
      if (cat->is_identity(m)) continue;
      d.add_edge(cat->src(m), cat->dst(m), mor_maps[static_cast<size_t>(m)],
                 cat->mors[static_cast<size_t>(m)].name);
    }
    return d;
  }
};

// A functor to Set must send identities to identities and respect composites.
inline LawReport check_cat_diagram(const CatDiagram& D) {
  LawReport rep;
  rep.subject = "diagram on " + D.cat->name;
  const auto& C = *D.cat;
  for (int m = 0; m < C.num_mors(); ++m) {
    ++rep.checked;
    if (static_cast<int>(D.mor_maps[static_cast<size_t>(m)].size()) != D.sizes[static_cast<size_t>(C.src(m))])
      rep.note("value of " + C.mors[static_cast<size_t>(m)].name + " has wrong source size");
  }
  if (!rep.ok()) return rep;
  for (int x = 0; x < C.num_objects(); ++x) {
    ++rep.checked;
    const auto& idm = D.mor_maps[static_cast<size_t>(C.identity(x))];
    for (int e = 0; e < static_cast<int>(idm.size()); ++e)
      if (idm[static_cast<size_t>(e)] != e) {
        rep.note("identity at " + C.objects[static_cast<size_t>(x)] + " not the identity map");
        break;
      }
  }
  for (int f = 0; f < C.num_mors(); ++f)
    for (int g = 0; g < C.num_mors(); ++g) {
      if (C.dst(f) != C.src(g)) continue;
      ++rep.checked;
      int gf = C.compose(g, f);
      const auto& mf = D.mor_maps[static_cast<size_t>(f)];
      const auto& mg = D.mor_maps[static_cast<size_t>(g)];
      const auto& mgf = D.mor_maps[static_cast<size_t>(gf)];
      for (size_t e = 0; e < mf.size(); ++e)
        if (mgf[e] != mg[static_cast<size_t>(mf[e])]) {
          rep.note("functoriality fails on " + C.mors[static_cast<size_t>(g)].name + " ∘ " +
                   C.mors[static_cast<size_t>(f)].name);
          break;
        }
    }
  if (D.pointed)
    for (int m = 0; m < C.num_mors(); ++m) {
      ++rep.checked;
      if (D.mor_maps[static_cast<size_t>(m)][static_cast<size_t>(D.basepoints[static_cast<size_t>(C.src(m))])] !=
          D.basepoints[static_cast<size_t>(C.dst(m))])
        rep.note("structure map " + C.mors[static_cast<size_t>(m)].name + " not pointed");
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Colimits. Element tags are (grade, node, elem); class representatives are
// the lexicographically least member tag, and classes are listed in
// representative order, so results never depend on union order.

struct ElemTag {
  int grade = 0, node = -1, elem = -1;
  bool operator<(const ElemTag& o) const {
    if (grade != o.grade) return grade < o.grade;
    if (node != o.node) return node < o.node;
    return elem < o.elem;
  }
  bool operator==(const ElemTag& o) const {
    return grade == o.grade && node == o.node && elem == o.elem;
  }
  bool synthetic() const { return node < 0; }  // basepoint of an empty pointed colimit
  std::string str() const {
    if (synthetic()) return "(*)";
    return "(g" + std::to_string(grade) + ",n" + std::to_string(node) + ",e" + std::to_string(elem) + ")";
  }
};

struct Colimit {
  int num_classes = 0;
  std::vector<ElemTag> class_rep;              // per class, least member tag
  std::vector<std::vector<ElemTag>> members;   // per class, sorted
  std::vector<std::vector<int>> legs;          // per node: elem -> class (empty if node excluded)

  int leg(int node, int elem) const {
    require(node >= 0 && node < static_cast<int>(legs.size()) && !legs[static_cast<size_t>(node)].empty(),
            ErrorKind::structural, "colimit leg requested for excluded node");
    return legs[static_cast<size_t>(node)][static_cast<size_t>(elem)];
  }
};

inline Colimit colimit_set(const SetDiagram& d, int grade_bound = INT_MAX) {
  std::vector<char> included(d.sizes.size(), 0);
  std::vector<long long> offset(d.sizes.size(), -1);
  long long total = 0;
  for (size_t i = 0; i < d.sizes.size(); ++i)
    if (d.grades[i] <= grade_bound) {
      included[i] = 1;
      offset[i] = total;
      total += d.sizes[i];
    }

  Colimit out;
  out.legs.assign(d.sizes.size(), {});
  if (total == 0) {
    if (d.pointed) {  // initial pointed set: a single basepoint class
      out.num_classes = 1;
      out.class_rep.push_back(ElemTag{-1, -1, 0});
      out.members.push_back({ElemTag{-1, -1, 0}});
    }
    return out;
  }
  require(total <= INT_MAX, ErrorKind::cap, "colimit carrier too large");

  UnionFind uf(static_cast<int>(total));
  for (const auto& e : d.edges) {
    if (!included[static_cast<size_t>(e.src)] || !included[static_cast<size_t>(e.dst)]) continue;
    for (int a = 0; a < d.sizes[static_cast<size_t>(e.src)]; ++a)
      uf.unite(static_cast<int>(offset[static_cast<size_t>(e.src)]) + a,
               static_cast<int>(offset[static_cast<size_t>(e.dst)]) + e.map[static_cast<size_t>(a)]);
  }
  if (d.pointed) {
    int first_bp = -1;
    for (size_t i = 0; i < d.sizes.size(); ++i) {
      if (!included[i]) continue;
      require(d.sizes[i] > 0, ErrorKind::structural, "pointed diagram node with empty value");
      int bp = static_cast<int>(offset[i]) + d.basepoints[i];
      if (first_bp < 0)
        first_bp = bp;
      else
        uf.unite(first_bp, bp);
    }
  }

  // group by root, order classes by least tag
  std::map<int, std::vector<ElemTag>> groups;
  for (size_t i = 0; i < d.sizes.size(); ++i) {
    if (!included[i]) continue;
    for (int a = 0; a < d.sizes[i]; ++a)
      groups[uf.find(static_cast<int>(offset[i]) + a)]
          .push_back(ElemTag{d.grades[i], static_cast<int>(i), a});
  }
  std::vector<std::pair<ElemTag, int>> order;  // (least tag, root)
  for (auto& [root, tags] : groups) {
    std::sort(tags.begin(), tags.end());
    order.push_back({tags.front(), root});
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::map<int, int> class_of_root;
  for (const auto& [tag, root] : order) {
    class_of_root[root] = out.num_classes++;
    out.class_rep.push_back(tag);
    out.members.push_back(groups[root]);
  }
  for (size_t i = 0; i < d.sizes.size(); ++i) {
    if (!included[i]) continue;
    out.legs[i].resize(static_cast<size_t>(d.sizes[i]));
    for (int a = 0; a < d.sizes[i]; ++a)
      out.legs[i][static_cast<size_t>(a)] = class_of_root[uf.find(static_cast<int>(offset[i]) + a)];
  }
  return out;
}

inline Colimit colimit_set(const CatDiagram& D, int grade_bound = INT_MAX) {
  return colimit_set(D.to_set_diagram(), grade_bound);
}

struct TruncatedColimit {
  int L = 0;
  Colimit at_L;
  Colimit at_next;
  std::vector<int> comparison;  // class at L -> class at L+1
  bool stabilized = false;
};

inline TruncatedColimit truncated_colimit(const SetDiagram& d, int L) {
  TruncatedColimit tc;
  tc.L = L;
  tc.at_L = colimit_set(d, L);
  tc.at_next = colimit_set(d, L + 1);
  tc.comparison.assign(static_cast<size_t>(tc.at_L.num_classes), -1);
  std::vector<int> hit(static_cast<size_t>(tc.at_next.num_classes), 0);
  bool injective = true;
  for (int c = 0; c < tc.at_L.num_classes; ++c) {
    const ElemTag& t = tc.at_L.class_rep[static_cast<size_t>(c)];
    int img = t.synthetic() ? (tc.at_next.num_classes > 0 ? 0 : -1)
                            : tc.at_next.leg(t.node, t.elem);
    if (t.synthetic() && !tc.at_next.class_rep.empty() && !tc.at_next.class_rep[0].synthetic()) {
      // basepoint of empty colimit lands in the basepoint class of the larger one
      img = -1;
      for (size_t i = 0; i < d.sizes.size(); ++i)
        if (d.pointed && d.grades[i] <= L + 1 && !tc.at_next.legs[i].empty()) {
          img = tc.at_next.leg(static_cast<int>(i), d.basepoints[i]);
          break;
        }
    }
    tc.comparison[static_cast<size_t>(c)] = img;
    if (img >= 0) {
      if (hit[static_cast<size_t>(img)]++) injective = false;
    }
  }
  bool surjective = true;
  for (int v : hit)
    if (!v) surjective = false;
  tc.stabilized = injective && surjective && tc.at_L.num_classes == tc.at_next.num_classes;
  return tc;
}

// ---------------------------------------------------------------------------
// Cocones and the extensional universal property.

struct Cocone {
  int apex_size = 0;
  std::vector<std::vector<int>> legs;  // per node (empty for excluded nodes)
};

inline Cocone colimit_as_cocone(const Colimit& c) {
  return Cocone{c.num_classes, c.legs};
}

inline bool cocone_commutes(const SetDiagram& d, const Cocone& c, int grade_bound = INT_MAX) {
  for (const auto& e : d.edges) {
    if (d.grades[static_cast<size_t>(e.src)] > grade_bound ||
        d.grades[static_cast<size_t>(e.dst)] > grade_bound)
      continue;
    for (int a = 0; a < d.sizes[static_cast<size_t>(e.src)]; ++a)
      if (c.legs[static_cast<size_t>(e.src)][static_cast<size_t>(a)] !=
          c.legs[static_cast<size_t>(e.dst)][static_cast<size_t>(e.map[static_cast<size_t>(a)])])
        return false;
  }
  if (d.pointed) {
    int bp_class = -1;
    for (size_t i = 0; i < d.sizes.size(); ++i) {
      if (d.grades[i] > grade_bound || c.legs[i].empty()) continue;
      int v = c.legs[i][static_cast<size_t>(d.basepoints[i])];
      if (bp_class < 0) bp_class = v;
      if (v != bp_class) return false;
    }
  }
  return true;
}

// Number of maps m: colimit -> apex of `other` with m ∘ legs == other.legs.
// The colimit's legs are jointly surjective, so the count is 1 when the forced
// values are consistent and 0 otherwise; counted elementwise, not assumed.
inline long long mediating_map_count(const Colimit& colim, const Cocone& other,
                                     const SetDiagram& d, int grade_bound = INT_MAX) {
  std::vector<int> forced(static_cast<size_t>(colim.num_classes), -1);
  for (size_t i = 0; i < d.sizes.size(); ++i) {
    if (d.grades[i] > grade_bound || colim.legs[i].empty()) continue;
    for (int a = 0; a < d.sizes[i]; ++a) {
      int cls = colim.legs[i][static_cast<size_t>(a)];
      int want = other.legs[i][static_cast<size_t>(a)];
      if (forced[static_cast<size_t>(cls)] < 0)
        forced[static_cast<size_t>(cls)] = want;
      else if (forced[static_cast<size_t>(cls)] != want)
        return 0;
    }
  }
  long long count = 1;
  for (int v : forced)
    if (v < 0) count *= other.apex_size;  // unconstrained class (never happens for our colimits)
  return count;
}

// Exhaustively enumerate every cocone with apex size <= max_apex and check
// that exactly one mediating map exists for each. Exponential; tiny diagrams only.
inline bool check_cocone_universal(const SetDiagram& d, const Colimit& colim, int max_apex,
                                   int grade_bound = INT_MAX) {
  std::vector<int> nodes;
  long long total = 0;
  for (size_t i = 0; i < d.sizes.size(); ++i)
    if (d.grades[i] <= grade_bound) {
      nodes.push_back(static_cast<int>(i));
      total += d.sizes[i];
    }
  require(total <= 12, ErrorKind::cap,
          "check_cocone_universal is exhaustive; diagram too large (" + std::to_string(total) +
              " elements)");
  for (int apex = 1; apex <= max_apex; ++apex) {
    // enumerate all leg families: |apex|^total assignments
    std::vector<int> flat(static_cast<size_t>(total), 0);
    auto run_one = [&]() {
      Cocone c;
      c.apex_size = apex;
      c.legs.assign(d.sizes.size(), {});
      int pos = 0;
      for (int n : nodes) {
        c.legs[static_cast<size_t>(n)].assign(static_cast<size_t>(d.sizes[static_cast<size_t>(n)]), 0);
        for (int a = 0; a < d.sizes[static_cast<size_t>(n)]; ++a)
          c.legs[static_cast<size_t>(n)][static_cast<size_t>(a)] = flat[static_cast<size_t>(pos++)];
      }
      if (!cocone_commutes(d, c, grade_bound)) return true;
      return mediating_map_count(colim, c, d, grade_bound) == 1;
    };
    if (total == 0) {
      if (!run_one()) return false;
      continue;
    }
    while (true) {
      if (!run_one()) return false;
      int i = 0;
      while (i < total && flat[static_cast<size_t>(i)] == apex - 1) flat[static_cast<size_t>(i++)] = 0;
      if (i == total) break;
      ++flat[static_cast<size_t>(i)];
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Extensional finality: compare colim(D∘u) -> colim(D).

struct FinalityResult {
  bool iso = false;
  int classes_restricted = 0;
  int classes_full = 0;
  std::vector<int> comparison;  // restricted class -> full class
};

inline FinalityResult finality_check(const Functor& u, const CatDiagram& D) {
  require(D.cat == u.dst, ErrorKind::structural, "finality_check: diagram not on the functor's target");
  CatDiagram restricted;
  restricted.cat = u.src;
  restricted.pointed = D.pointed;
  for (int i = 0; i < u.src->num_objects(); ++i) {
    restricted.sizes.push_back(D.sizes[static_cast<size_t>(u.obj_map[static_cast<size_t>(i)])]);
    if (D.pointed)
      restricted.basepoints.push_back(D.basepoints[static_cast<size_t>(u.obj_map[static_cast<size_t>(i)])]);
  }
  for (int m = 0; m < u.src->num_mors(); ++m)
    restricted.mor_maps.push_back(D.mor_maps[static_cast<size_t>(u.mor_map[static_cast<size_t>(m)])]);

  Colimit sub = colimit_set(restricted);
  Colimit full = colimit_set(D);
  FinalityResult r;
  r.classes_restricted = sub.num_classes;
  r.classes_full = full.num_classes;
  r.comparison.assign(static_cast<size_t>(sub.num_classes), -1);
  std::vector<int> hit(static_cast<size_t>(full.num_classes), 0);
  bool injective = true;
  for (int c = 0; c < sub.num_classes; ++c) {
    ElemTag t = sub.class_rep[static_cast<size_t>(c)];
    int img;
    if (t.synthetic()) {
      img = full.num_classes == 1 && full.class_rep[0].synthetic() ? 0 : -1;
      if (img < 0 && D.pointed)
        for (size_t i = 0; i < D.sizes.size(); ++i)
          if (!full.legs[i].empty()) {
            img = full.leg(static_cast<int>(i), D.basepoints[i]);
            break;
          }
    } else {
      img = full.leg(u.obj_map[static_cast<size_t>(t.node)], t.elem);
    }
    r.comparison[static_cast<size_t>(c)] = img;
    if (img >= 0 && hit[static_cast<size_t>(img)]++) injective = false;
  }
  bool surjective = true;
  for (int v : hit)
    if (!v) surjective = false;
  r.iso = injective && surjective && sub.num_classes == full.num_classes;
  return r;
}

// ---------------------------------------------------------------------------
// Slices and commas.

struct SliceCategory {
  FiniteCategory cat;
  std::vector<std::vector<int>> obj_data;  // per slice object: the defining morphism ids
  std::vector<int> mor_data;               // per slice morphism: the underlying morphism
};

// Objects: tuples (f_i: x_i -> s) with a common target; morphisms h: s -> t
// with h ∘ f_i = g_i for all i. One x gives the ordinary underslice x/C.
inline SliceCategory multi_slice(const FiniteCategory& C, const std::vector<int>& xs) {
  SliceCategory S;
  S.cat.name = "slice(" + C.name + ")";
  std::vector<int> targets;  // per slice object, the common target s
  for (int s = 0; s < C.num_objects(); ++s) {
    std::vector<std::vector<int>> choices;
    for (int x : xs) choices.push_back(C.hom(x, s));
    bool any_empty = false;
    for (const auto& ch : choices) any_empty |= ch.empty();
    if (any_empty) continue;
    std::vector<int> sizes;
    for (const auto& ch : choices) sizes.push_back(static_cast<int>(ch.size()));
    ProductIndexer idx(sizes);
    for (long long t = 0; t < idx.total; ++t) {
      auto tuple = idx.unflatten(t);
      std::vector<int> fs;
      std::string nm = C.objects[static_cast<size_t>(s)] + "<-(";
      for (size_t i = 0; i < tuple.size(); ++i) {
        fs.push_back(choices[i][static_cast<size_t>(tuple[i])]);
        nm += (i ? "," : "") + C.mors[static_cast<size_t>(fs.back())].name;
      }
      nm += ")";
      S.cat.add_object(nm, C.grades[static_cast<size_t>(s)]);
      S.obj_data.push_back(fs);
      targets.push_back(s);
    }
  }
  // morphisms
  for (int a = 0; a < S.cat.num_objects(); ++a)
    for (int b = 0; b < S.cat.num_objects(); ++b)
      for (int h : C.hom(targets[static_cast<size_t>(a)], targets[static_cast<size_t>(b)])) {
        bool commutes = true;
        for (size_t i = 0; i < xs.size(); ++i)
          if (C.compose(h, S.obj_data[static_cast<size_t>(a)][i]) != S.obj_data[static_cast<size_t>(b)][i]) {
            commutes = false;
            break;
          }
        if (!commutes) continue;
        S.cat.add_mor(a, b, C.mors[static_cast<size_t>(h)].name + "@" + std::to_string(a));
        S.mor_data.push_back(h);
      }
  // identities and composition from the underlying category
  std::map<std::pair<long long, int>, int> by_src_h;
  for (int m = 0; m < S.cat.num_mors(); ++m) {
    long long key = static_cast<long long>(S.cat.src(m)) * S.cat.num_objects() + S.cat.dst(m);
    by_src_h[{key, S.mor_data[static_cast<size_t>(m)]}] = m;
  }
  for (int a = 0; a < S.cat.num_objects(); ++a) {
    long long key = static_cast<long long>(a) * S.cat.num_objects() + a;
    auto it = by_src_h.find({key, C.identity(targets[static_cast<size_t>(a)])});
    require(it != by_src_h.end(), ErrorKind::internal, "slice identity missing");
    S.cat.set_identity(a, it->second);
  }
  for (int f = 0; f < S.cat.num_mors(); ++f)
    for (int g = 0; g < S.cat.num_mors(); ++g) {
      if (S.cat.dst(f) != S.cat.src(g)) continue;
      int h = C.compose(S.mor_data[static_cast<size_t>(g)], S.mor_data[static_cast<size_t>(f)]);
      long long key =
          static_cast<long long>(S.cat.src(f)) * S.cat.num_objects() + S.cat.dst(g);
      auto it = by_src_h.find({key, h});
      require(it != by_src_h.end(), ErrorKind::internal, "slice not closed under composition");
      S.cat.set_comp(g, f, it->second);
    }
  return S;
}

inline SliceCategory under_slice(const FiniteCategory& C, int x) { return multi_slice(C, {x}); }

inline FiniteCategory opposite(const FiniteCategory& C) {
  FiniteCategory op;
  op.name = C.name + "^op";
  op.objects = C.objects;
  op.grades = C.grades;
  op.identity_ = C.identity_;
  for (const auto& m : C.mors) op.mors.push_back({m.dst, m.src, m.name});
  for (int m = 0; m < op.num_mors(); ++m) op.hom_[{op.src(m), op.dst(m)}].push_back(m);
  for (const auto& [pair, gf] : C.comp_) op.comp_[{pair.second, pair.first}] = gf;
  return op;
}

inline SliceCategory over_slice(const FiniteCategory& C, int x) {
  // objects f: s -> x; morphisms h: s -> t with g ∘ h = f
  SliceCategory S;
  S.cat.name = "overslice(" + C.name + ")";
  std::vector<int> sources;
  for (int s = 0; s < C.num_objects(); ++s)
    for (int f : C.hom(s, x)) {
      S.cat.add_object(C.mors[static_cast<size_t>(f)].name + "->" + C.objects[static_cast<size_t>(x)],
                       C.grades[static_cast<size_t>(s)]);
      S.obj_data.push_back({f});
      sources.push_back(s);
    }
  std::map<std::pair<long long, int>, int> by_src_h;
  for (int a = 0; a < S.cat.num_objects(); ++a)
    for (int b = 0; b < S.cat.num_objects(); ++b)
      for (int h : C.hom(sources[static_cast<size_t>(a)], sources[static_cast<size_t>(b)])) {
        if (C.compose(S.obj_data[static_cast<size_t>(b)][0], h) != S.obj_data[static_cast<size_t>(a)][0])
          continue;
        int m = S.cat.add_mor(a, b, C.mors[static_cast<size_t>(h)].name + "@" + std::to_string(a));
        S.mor_data.push_back(h);
        by_src_h[{static_cast<long long>(a) * S.cat.num_objects() + b, h}] = m;
      }
  for (int a = 0; a < S.cat.num_objects(); ++a) {
    auto it = by_src_h.find({static_cast<long long>(a) * S.cat.num_objects() + a,
                             C.identity(sources[static_cast<size_t>(a)])});
    require(it != by_src_h.end(), ErrorKind::internal, "overslice identity missing");
    S.cat.set_identity(a, it->second);
  }
  for (int f = 0; f < S.cat.num_mors(); ++f)
    for (int g = 0; g < S.cat.num_mors(); ++g) {
      if (S.cat.dst(f) != S.cat.src(g)) continue;
      int h = C.compose(S.mor_data[static_cast<size_t>(g)], S.mor_data[static_cast<size_t>(f)]);
      auto it = by_src_h.find(
          {static_cast<long long>(S.cat.src(f)) * S.cat.num_objects() + S.cat.dst(g), h});
      require(it != by_src_h.end(), ErrorKind::internal, "overslice not closed under composition");
      S.cat.set_comp(g, f, it->second);
    }
  return S;
}

// Comma x ↓ u for u: J -> C: objects (j, f: x -> u(j)); morphisms k: j -> j'
// with u(k) ∘ f = f'.
inline SliceCategory comma_under(const FiniteCategory& C, int x, const Functor& u) {
  SliceCategory S;
  S.cat.name = "comma(" + C.objects[static_cast<size_t>(x)] + "/" + u.src->name + ")";
  const auto& J = *u.src;
  std::vector<std::pair<int, int>> objs;  // (j, f)
  for (int j = 0; j < J.num_objects(); ++j)
    for (int f : C.hom(x, u.obj_map[static_cast<size_t>(j)])) {
      S.cat.add_object(J.objects[static_cast<size_t>(j)] + ":" + C.mors[static_cast<size_t>(f)].name);
      S.obj_data.push_back({j, f});
      objs.push_back({j, f});
    }
  std::map<std::pair<long long, int>, int> by_src_k;
  for (int a = 0; a < S.cat.num_objects(); ++a)
    for (int b = 0; b < S.cat.num_objects(); ++b)
      for (int k : J.hom(objs[static_cast<size_t>(a)].first, objs[static_cast<size_t>(b)].first)) {
        if (C.compose(u.mor_map[static_cast<size_t>(k)], objs[static_cast<size_t>(a)].second) !=
            objs[static_cast<size_t>(b)].second)
          continue;
        int m = S.cat.add_mor(a, b, J.mors[static_cast<size_t>(k)].name + "@" + std::to_string(a));
        S.mor_data.push_back(k);
        by_src_k[{static_cast<long long>(a) * S.cat.num_objects() + b, k}] = m;
      }
  for (int a = 0; a < S.cat.num_objects(); ++a) {
    auto it = by_src_k.find({static_cast<long long>(a) * S.cat.num_objects() + a,
                             J.identity(objs[static_cast<size_t>(a)].first)});
    require(it != by_src_k.end(), ErrorKind::internal, "comma identity missing");
    S.cat.set_identity(a, it->second);
  }
  for (int f = 0; f < S.cat.num_mors(); ++f)
    for (int g = 0; g < S.cat.num_mors(); ++g) {
      if (S.cat.dst(f) != S.cat.src(g)) continue;
      int k = J.compose(S.mor_data[static_cast<size_t>(g)], S.mor_data[static_cast<size_t>(f)]);
      auto it = by_src_k.find(
          {static_cast<long long>(S.cat.src(f)) * S.cat.num_objects() + S.cat.dst(g), k});
      require(it != by_src_k.end(), ErrorKind::internal, "comma not closed under composition");
      S.cat.set_comp(g, f, it->second);
    }
  return S;
}

struct ProductCategory {
  FiniteCategory cat;
  std::vector<std::pair<int, int>> obj_pair;
  std::vector<std::pair<int, int>> mor_pair;
  std::map<std::pair<int, int>, int> obj_of_pair;
  std::map<std::pair<int, int>, int> mor_of_pair;
};

inline ProductCategory product_category(const FiniteCategory& A, const FiniteCategory& B) {
  ProductCategory P;
  P.cat.name = A.name + "x" + B.name;
  for (int a = 0; a < A.num_objects(); ++a)
    for (int b = 0; b < B.num_objects(); ++b) {
      int id = P.cat.add_object("(" + A.objects[static_cast<size_t>(a)] + "," +
                                    B.objects[static_cast<size_t>(b)] + ")",
                                A.grades[static_cast<size_t>(a)] + B.grades[static_cast<size_t>(b)]);
      P.obj_pair.push_back({a, b});
      P.obj_of_pair[{a, b}] = id;
    }
  for (int f = 0; f < A.num_mors(); ++f)
    for (int g = 0; g < B.num_mors(); ++g) {
      int id = P.cat.add_mor(P.obj_of_pair[{A.src(f), B.src(g)}],
                             P.obj_of_pair[{A.dst(f), B.dst(g)}],
                             "(" + A.mors[static_cast<size_t>(f)].name + "," +
                                 B.mors[static_cast<size_t>(g)].name + ")");
      P.mor_pair.push_back({f, g});
      P.mor_of_pair[{f, g}] = id;
    }
  for (int x = 0; x < P.cat.num_objects(); ++x) {
    auto [a, b] = P.obj_pair[static_cast<size_t>(x)];
    P.cat.set_identity(x, P.mor_of_pair[{A.identity(a), B.identity(b)}]);
  }
  for (int m = 0; m < P.cat.num_mors(); ++m)
    for (int n = 0; n < P.cat.num_mors(); ++n) {
      if (P.cat.dst(m) != P.cat.src(n)) continue;
      auto [f1, g1] = P.mor_pair[static_cast<size_t>(m)];
      auto [f2, g2] = P.mor_pair[static_cast<size_t>(n)];
      P.cat.set_comp(n, m, P.mor_of_pair[{A.compose(f2, f1), B.compose(g2, g1)}]);
    }
  return P;
}

inline Functor diagonal_functor(const FiniteCategory& A, const ProductCategory& AxA) {
  Functor d;
  d.src = &A;
  d.dst = &AxA.cat;
  for (int x = 0; x < A.num_objects(); ++x) d.obj_map.push_back(AxA.obj_of_pair.at({x, x}));
  for (int m = 0; m < A.num_mors(); ++m) d.mor_map.push_back(AxA.mor_of_pair.at({m, m}));
  return d;
}

// ---------------------------------------------------------------------------
// Connectivity and certificate-based weak contractibility.

inline bool is_connected(const FiniteCategory& C) {
  if (C.num_objects() == 0) return false;
  UnionFind uf(C.num_objects());
  for (int m = 0; m < C.num_mors(); ++m) uf.unite(C.src(m), C.dst(m));
  for (int x = 1; x < C.num_objects(); ++x)
    if (uf.find(x) != uf.find(0)) return false;
  return true;
}

enum class Contractibility { certified, connected_only, disconnected };

struct ContractReport {
  Contractibility status = Contractibility::disconnected;
  std::vector<std::string> steps;
  bool certified() const { return status == Contractibility::certified; }
};

// Search for a contraction certificate: repeatedly certify an initial or
// terminal object of the current full subcategory, or delete an object that
// reflects (or coreflects) into the rest. Every deletion step is a homotopy
// equivalence of nerves, so a successful run certifies weak contractibility.
// The search never claims contractibility without completing a certificate.
inline ContractReport weak_contractibility(const FiniteCategory& C) {
  ContractReport rep;
  if (C.num_objects() == 0) {
    rep.status = Contractibility::disconnected;
    rep.steps.push_back("empty category");
    return rep;
  }
  std::vector<char> alive(static_cast<size_t>(C.num_objects()), 1);
  int alive_count = C.num_objects();
  auto hom_count = [&](int a, int b) { return static_cast<int>(C.hom(a, b).size()); };

  while (true) {
    // base case: an initial or terminal object of the current subcategory
    for (int x = 0; x < C.num_objects(); ++x) {
      if (!alive[static_cast<size_t>(x)]) continue;
      bool initial = true, terminal = true;
      for (int c = 0; c < C.num_objects(); ++c) {
        if (!alive[static_cast<size_t>(c)]) continue;
        if (hom_count(x, c) != 1) initial = false;
        if (hom_count(c, x) != 1) terminal = false;
      }
      if (initial || terminal) {
        rep.steps.push_back(std::string(initial ? "initial" : "terminal") + " object " +
                            C.objects[static_cast<size_t>(x)] + " (remaining " +
                            std::to_string(alive_count) + " objects)");
        rep.status = Contractibility::certified;
        return rep;
      }
    }
    // removal step: find x with a (co)reflection into the remaining objects
    bool removed = false;
    for (int x = 0; x < C.num_objects() && !removed; ++x) {
      if (!alive[static_cast<size_t>(x)]) continue;
      for (int y = 0; y < C.num_objects() && !removed; ++y) {
        if (!alive[static_cast<size_t>(y)] || y == x) continue;
        // reflection eta: x -> y, composition with eta bijects hom(y,c) -> hom(x,c)
        for (int eta : C.hom(x, y)) {
          bool ok = true;
          for (int c = 0; c < C.num_objects() && ok; ++c) {
            if (!alive[static_cast<size_t>(c)] || c == x) continue;
            std::set<int> images;
            for (int h : C.hom(y, c)) images.insert(C.compose(h, eta));
            ok = images.size() == C.hom(y, c).size() &&
                 static_cast<int>(images.size()) == hom_count(x, c);
          }
          if (ok) {
            alive[static_cast<size_t>(x)] = 0;
            --alive_count;
            rep.steps.push_back("remove " + C.objects[static_cast<size_t>(x)] + " via reflection " +
                                C.mors[static_cast<size_t>(eta)].name);
            removed = true;
            break;
          }
        }
        if (removed) break;
        // coreflection eps: y -> x, postcomposition bijects hom(c,y) -> hom(c,x)
        for (int eps : C.hom(y, x)) {
          bool ok = true;
          for (int c = 0; c < C.num_objects() && ok; ++c) {
            if (!alive[static_cast<size_t>(c)] || c == x) continue;
            std::set<int> images;
            for (int h : C.hom(c, y)) images.insert(C.compose(eps, h));
            ok = images.size() == C.hom(c, y).size() &&
                 static_cast<int>(images.size()) == hom_count(c, x);
          }
          if (ok) {
            alive[static_cast<size_t>(x)] = 0;
            --alive_count;
            rep.steps.push_back("remove " + C.objects[static_cast<size_t>(x)] + " via coreflection " +
                                C.mors[static_cast<size_t>(eps)].name);
            removed = true;
            break;
          }
        }
      }
    }
    if (!removed) {
      rep.status = is_connected(C) ? Contractibility::connected_only : Contractibility::disconnected;
      rep.steps.push_back("no certificate found; category is " +
                          std::string(rep.status == Contractibility::connected_only ? "connected"
                                                                                     : "disconnected"));
      return rep;
    }
  }
}

// ---------------------------------------------------------------------------
// DOT export. Identities are skipped; when the composition table is total,
// composite morphisms are skipped too so the output shows a generating graph.

inline std::string dot_export(const FiniteCategory& C) {
  std::vector<char> skip(static_cast<size_t>(C.num_mors()), 0);
  for (int m = 0; m < C.num_mors(); ++m)
    if (C.is_identity(m)) skip[static_cast<size_t>(m)] = 1;
  // mark decomposables when composition is known
  for (const auto& [pair, gf] : C.comp_) {
    auto [g, f] = pair;
    if (!C.is_identity(g) && !C.is_identity(f) && gf >= 0) skip[static_cast<size_t>(gf)] = 1;
  }
  std::ostringstream os;
  os << "digraph \"" << C.name << "\" {\n";
  for (int x = 0; x < C.num_objects(); ++x)
    os << "  o" << x << " [label=\"" << C.objects[static_cast<size_t>(x)] << "\"];\n";
  for (int m = 0; m < C.num_mors(); ++m) {
    if (skip[static_cast<size_t>(m)]) continue;
    os << "  o" << C.src(m) << " -> o" << C.dst(m) << " [label=\""
       << C.mors[static_cast<size_t>(m)].name << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace envlab
