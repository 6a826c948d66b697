#pragma once

// Colored symmetric operads as finite tables: multimorphism sets up to an
// arity cap, explicit symmetric-group action, unital composition. Includes
// exhaustive law checking, the standard builders (commutative, associative,
// nullary-extension, inert-only, cocartesian on a category), binary products,
// and operad morphisms.
//
// Conventions, fixed once and used everywhere:
//   act(φ,σ)(a_0..a_{n-1}) = φ(a_{σ(0)},..,a_{σ(n-1)})
//   profile(act(φ,σ))[t]   = profile(φ)[σ^{-1}(t)]
//   act(act(φ,σ),τ)        = act(φ, τ∘σ)     (compose_perm(τ,σ))
//   γ(φ;ψ_1..ψ_n) substitutes ψ_i into slot i; inputs concatenate in slot order.

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "util.hpp"

namespace envlab {

struct OperadOp {
  std::vector<int> profile;  // input colors, in slot order
  int out = 0;
  std::string name;
};

struct OperadSpec {
  std::string name = "operad";
  std::string signature;  // stable content key (builders set it; tables hash)
  std::vector<std::string> colors;
  int arity_cap = 0;
  std::vector<OperadOp> ops;
  std::map<std::pair<std::vector<int>, int>, std::vector<int>> mul_;
  std::vector<int> unit_;                                  // per color
  std::map<std::pair<int, Perm>, int> act_;                // (op, σ) -> op
  std::map<std::pair<int, std::vector<int>>, int> gamma_table_;  // authoritative entries
  std::function<int(const OperadSpec&, int, const std::vector<int>&)> gamma_rule_;
  mutable std::map<std::pair<int, std::vector<int>>, int> gamma_cache_;  // memo for the rule
  std::map<std::pair<int, int>, std::vector<int>> by_out_arity_;
  std::vector<std::vector<int>> op_data;  // builder decoration (cocartesian: hom ids per op)

  int num_colors() const { return static_cast<int>(colors.size()); }
  int num_ops() const { return static_cast<int>(ops.size()); }
  int arity(int op) const { return static_cast<int>(ops[static_cast<size_t>(op)].profile.size()); }
  int out(int op) const { return ops[static_cast<size_t>(op)].out; }
  const std::vector<int>& profile(int op) const { return ops[static_cast<size_t>(op)].profile; }
  const std::string& op_name(int op) const { return ops[static_cast<size_t>(op)].name; }

  int add_op(std::vector<int> prof, int out_color, const std::string& nm) {
    require(static_cast<int>(prof.size()) <= arity_cap, ErrorKind::cap,
            name + ": operation exceeds arity cap");
    for (int c : prof)
      require(c >= 0 && c < num_colors(), ErrorKind::structural, name + ": bad profile color");
    require(out_color >= 0 && out_color < num_colors(), ErrorKind::structural,
            name + ": bad output color");
    ops.push_back({prof, out_color, nm});
    int id = num_ops() - 1;
    mul_[{prof, out_color}].push_back(id);
    by_out_arity_[{out_color, static_cast<int>(prof.size())}].push_back(id);
    return id;
  }

  const std::vector<int>& mul(const std::vector<int>& prof, int out_color) const {
    static const std::vector<int> empty;
    auto it = mul_.find({prof, out_color});
    return it == mul_.end() ? empty : it->second;
  }

  const std::vector<int>& ops_with(int out_color, int ar) const {
    static const std::vector<int> empty;
    auto it = by_out_arity_.find({out_color, ar});
    return it == by_out_arity_.end() ? empty : it->second;
  }

  int unit(int color) const {
    require(color >= 0 && color < num_colors(), ErrorKind::structural, name + ": bad color");
    return unit_[static_cast<size_t>(color)];
  }

  void set_act(int op, const Perm& sigma, int result) { act_[{op, sigma}] = result; }

  int act(int op, const Perm& sigma) const {
    require(static_cast<int>(sigma.size()) == arity(op), ErrorKind::structural,
            name + ": permutation size does not match arity of " + op_name(op));
    auto it = act_.find({op, sigma});
    require(it != act_.end(), ErrorKind::structural,
            name + ": symmetric action undefined on " + op_name(op));
    return it->second;
  }

  void set_gamma(int op, const std::vector<int>& children, int result) {
    gamma_table_[{op, children}] = result;
  }

  int gamma(int op, const std::vector<int>& children) const {
    require(static_cast<int>(children.size()) == arity(op), ErrorKind::structural,
            name + ": gamma child count mismatch on " + op_name(op));
    int total = 0;
    for (size_t i = 0; i < children.size(); ++i) {
      require(out(children[i]) == profile(op)[i], ErrorKind::structural,
              name + ": gamma color mismatch at slot " + std::to_string(i) + " of " + op_name(op));
      total += arity(children[i]);
    }
    require(total <= arity_cap, ErrorKind::cap,
            name + ": composite arity " + std::to_string(total) + " exceeds cap " +
                std::to_string(arity_cap));
    auto key = std::make_pair(op, children);
    if (auto it = gamma_table_.find(key); it != gamma_table_.end()) return it->second;
    if (auto it = gamma_cache_.find(key); it != gamma_cache_.end()) return it->second;
    require(static_cast<bool>(gamma_rule_), ErrorKind::structural,
            name + ": gamma entry missing for " + op_name(op));
    int r = gamma_rule_(*this, op, children);
    gamma_cache_.emplace(std::move(key), r);
    return r;
  }

  // profile of act(op,σ), used by the builders when materializing act tables
  std::vector<int> permuted_profile(int op, const Perm& sigma) const {
    Perm inv = invert_perm(sigma);
    const auto& prof = profile(op);
    std::vector<int> out_prof(prof.size());
    for (size_t t = 0; t < prof.size(); ++t)
      out_prof[t] = prof[static_cast<size_t>(inv[t])];
    return out_prof;
  }

  std::string canonical_dump() const {
    std::ostringstream os;
    os << "colors:";
    for (const auto& c : colors) os << c << ";";
    os << "cap:" << arity_cap << ";ops:";
    for (const auto& op : ops) {
      os << "(";
      for (int c : op.profile) os << c << ",";
      os << "->" << op.out << ");";
    }
    os << "unit:";
    for (int u : unit_) os << u << ",";
    os << "act:";
    for (const auto& [k, v] : act_) {
      os << k.first << "[";
      for (int p : k.second) os << p << ",";
      os << "]=" << v << ";";
    }
    os << "gamma:";
    for (const auto& [k, v] : gamma_table_) {
      os << k.first << "(";
      for (int c : k.second) os << c << ",";
      os << ")=" << v << ";";
    }
    return os.str();
  }

  std::string content_hash() const {
    if (!signature.empty()) return hex64(fnv1a(signature));
    return hex64(fnv1a(canonical_dump()));
  }
};

using OperadPtr = std::shared_ptr<const OperadSpec>;

// ---------------------------------------------------------------------------
// Law checking. Structural malformation throws; law violations are reported.

namespace detail {

// child arity patterns (m_1..m_n) with sum <= bound, each m_i >= 0
inline void arity_patterns(int n, int bound, std::vector<int>& cur,
                           const std::function<void(const std::vector<int>&)>& body) {
  if (static_cast<int>(cur.size()) == n) {
    body(cur);
    return;
  }
  int used = 0;
  for (int v : cur) used += v;
  for (int m = 0; m + used <= bound; ++m) {
    cur.push_back(m);
    arity_patterns(n, bound, cur, body);
    cur.pop_back();
  }
}

// β with act(γ(φ;ψ⃗),β) = γ(act(φ,σ); ψ_{σ^{-1}(0)},..): block offΓ(i) moves to offLHS(σ(i))
inline Perm equivariance_block_perm(const Perm& sigma, const std::vector<int>& child_arities) {
  int n = static_cast<int>(sigma.size());
  Perm inv = invert_perm(sigma);
  std::vector<int> off_gamma(static_cast<size_t>(n), 0), off_lhs(static_cast<size_t>(n), 0);
  for (int i = 1; i < n; ++i)
    off_gamma[static_cast<size_t>(i)] =
        off_gamma[static_cast<size_t>(i - 1)] + child_arities[static_cast<size_t>(i - 1)];
  for (int t = 1; t < n; ++t)
    off_lhs[static_cast<size_t>(t)] =
        off_lhs[static_cast<size_t>(t - 1)] + child_arities[static_cast<size_t>(inv[t - 1])];
  int total = 0;
  for (int m : child_arities) total += m;
  Perm beta(static_cast<size_t>(total));
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < child_arities[static_cast<size_t>(i)]; ++r)
      beta[static_cast<size_t>(off_gamma[static_cast<size_t>(i)] + r)] =
          off_lhs[static_cast<size_t>(sigma[static_cast<size_t>(i)])] + r;
  return beta;
}

}  // namespace detail

inline LawReport check_operad_laws(const OperadSpec& O) {
  LawReport rep;
  rep.subject = O.name;

  // structural pass
  require(static_cast<int>(O.unit_.size()) == O.num_colors(), ErrorKind::structural,
          O.name + ": unit table size mismatch");
  for (int c = 0; c < O.num_colors(); ++c) {
    int u = O.unit(c);
    ++rep.checked;
    if (O.arity(u) != 1 || O.profile(u)[0] != c || O.out(u) != c)
      rep.note("unit of color " + O.colors[static_cast<size_t>(c)] + " is not a unary c -> c op");
  }

  // enumerate composable children for an op, calling back with the tuple
  auto for_each_children = [&](int op, const std::function<void(const std::vector<int>&)>& body) {
    int n = O.arity(op);
    std::vector<int> pattern;
    detail::arity_patterns(n, O.arity_cap, pattern,
                           [&](const std::vector<int>& ms) {
                             std::vector<int> tuple;
                             std::function<void(int)> rec = [&](int slot) {
                               if (slot == n) {
                                 body(tuple);
                                 return;
                               }
                               for (int psi :
                                    O.ops_with(O.profile(op)[static_cast<size_t>(slot)],
                                               ms[static_cast<size_t>(slot)])) {
                                 tuple.push_back(psi);
                                 rec(slot + 1);
                                 tuple.pop_back();
                               }
                             };
                             rec(0);
                           });
  };

  // action laws: identity, composition, profile coherence
  for (int op = 0; op < O.num_ops(); ++op) {
    int n = O.arity(op);
    auto perms = all_perms(n);
    for (const auto& s : perms) {
      ++rep.checked;
      int r = O.act(op, s);
      if (O.out(r) != O.out(op)) rep.note("act changes output color on " + O.op_name(op));
      auto want = O.permuted_profile(op, s);
      if (O.profile(r) != want) rep.note("act profile wrong on " + O.op_name(op));
    }
    if (O.act(op, identity_perm(n)) != op) rep.note("act by identity moves " + O.op_name(op));
    for (const auto& s : perms)
      for (const auto& t : perms) {
        ++rep.checked;
        if (O.act(O.act(op, s), t) != O.act(op, compose_perm(t, s)))
          rep.note("action composition fails on " + O.op_name(op));
      }
  }
  if (!rep.ok()) return rep;

  // unit laws
  for (int op = 0; op < O.num_ops(); ++op) {
    std::vector<int> units;
    for (int c : O.profile(op)) units.push_back(O.unit(c));
    ++rep.checked;
    if (O.gamma(op, units) != op) rep.note("right unit law fails on " + O.op_name(op));
    ++rep.checked;
    if (O.gamma(O.unit(O.out(op)), {op}) != op) rep.note("left unit law fails on " + O.op_name(op));
  }

  // gamma output/profile coherence + associativity
  for (int op = 0; op < O.num_ops(); ++op) {
    for_each_children(op, [&](const std::vector<int>& psis) {
      ++rep.checked;
      int g = O.gamma(op, psis);
      std::vector<int> want_prof;
      for (int psi : psis)
        for (int c : O.profile(psi)) want_prof.push_back(c);
      if (O.profile(g) != want_prof || O.out(g) != O.out(op)) {
        rep.note("gamma profile/out wrong on " + O.op_name(op));
        return;
      }
      // associativity: compose further with χ's on the composite
      for_each_children(g, [&](const std::vector<int>& chis) {
        ++rep.checked;
        int lhs = O.gamma(g, chis);
        // regroup: slot i of op receives γ(ψ_i; its chi block)
        std::vector<int> regrouped;
        size_t pos = 0;
        for (int psi : psis) {
          std::vector<int> block(chis.begin() + static_cast<long>(pos),
                                 chis.begin() + static_cast<long>(pos) + O.arity(psi));
          pos += static_cast<size_t>(O.arity(psi));
          regrouped.push_back(O.gamma(psi, block));
        }
        if (lhs != O.gamma(op, regrouped))
          rep.note("gamma associativity fails on " + O.op_name(op));
      });
    });
    if (rep.violations.size() > 25) return rep;  // enough evidence
  }
  if (!rep.ok()) return rep;

  // equivariance (outer): γ(act(φ,σ); ψ_{σ^{-1}(t)}) = act(γ(φ;ψ⃗), β)
  for (int op = 0; op < O.num_ops(); ++op) {
    int n = O.arity(op);
    auto perms = all_perms(n);
    for_each_children(op, [&](const std::vector<int>& psis) {
      std::vector<int> arities;
      for (int psi : psis) arities.push_back(O.arity(psi));
      int g = O.gamma(op, psis);
      for (const auto& s : perms) {
        ++rep.checked;
        Perm inv = invert_perm(s);
        std::vector<int> permuted_children(psis.size());
        for (size_t t = 0; t < psis.size(); ++t)
          permuted_children[t] = psis[static_cast<size_t>(inv[t])];
        int lhs = O.gamma(O.act(op, s), permuted_children);
        int rhs = O.act(g, detail::equivariance_block_perm(s, arities));
        if (lhs != rhs) rep.note("outer equivariance fails on " + O.op_name(op));
      }
    });
  }

  // equivariance (inner): γ(φ; act(ψ_i,τ_i)) = act(γ(φ;ψ⃗), τ_0 ⊕ .. ⊕ τ_{n-1})
  for (int op = 0; op < O.num_ops(); ++op) {
    for_each_children(op, [&](const std::vector<int>& psis) {
      int g = O.gamma(op, psis);
      // one non-identity τ at a time is enough to generate the block group,
      // but check full tuples on low arities for good measure
      for (size_t i = 0; i < psis.size(); ++i) {
        for (const auto& tau : all_perms(O.arity(psis[i]))) {
          ++rep.checked;
          std::vector<int> twisted = psis;
          twisted[i] = O.act(psis[i], tau);
          std::vector<Perm> blocks;
          for (size_t j = 0; j < psis.size(); ++j)
            blocks.push_back(j == i ? tau : identity_perm(O.arity(psis[j])));
          if (O.gamma(op, twisted) != O.act(g, block_sum(blocks)))
            rep.note("inner equivariance fails on " + O.op_name(op));
        }
      }
    });
    if (rep.violations.size() > 25) return rep;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Builders. All materialize full act tables; all but product() materialize
// full gamma tables.

// one color, exactly one operation of every arity <= cap
inline OperadSpec builder_com(int cap) {
  OperadSpec O;
  O.name = "com";
  O.signature = "com:" + std::to_string(cap);
  O.colors = {"*"};
  O.arity_cap = cap;
  std::vector<int> op_of_arity;
  for (int n = 0; n <= cap; ++n)
    op_of_arity.push_back(O.add_op(std::vector<int>(static_cast<size_t>(n), 0), 0,
                                   "mu" + std::to_string(n)));
  O.unit_ = {op_of_arity[1]};
  for (int n = 0; n <= cap; ++n)
    for (const auto& s : all_perms(n)) O.set_act(op_of_arity[static_cast<size_t>(n)], s, op_of_arity[static_cast<size_t>(n)]);
  for (int n = 0; n <= cap; ++n) {
    std::vector<int> pattern;
    detail::arity_patterns(n, cap, pattern, [&](const std::vector<int>& ms) {
      std::vector<int> children;
      int total = 0;
      for (int m : ms) {
        children.push_back(op_of_arity[static_cast<size_t>(m)]);
        total += m;
      }
      O.set_gamma(op_of_arity[static_cast<size_t>(n)], children, op_of_arity[static_cast<size_t>(total)]);
    });
  }
  return O;
}

// one color, single nullary + unary identity, nothing above
inline OperadSpec builder_e0(int cap) {
  OperadSpec O;
  O.name = "e0";
  O.signature = "e0:" + std::to_string(cap);
  O.colors = {"*"};
  O.arity_cap = cap;
  int eta = O.add_op({}, 0, "eta");
  int id = O.add_op({0}, 0, "id");
  O.unit_ = {id};
  O.set_act(eta, Perm{}, eta);
  O.set_act(id, Perm{0}, id);
  O.set_gamma(id, {id}, id);
  O.set_gamma(id, {eta}, eta);
  O.set_gamma(eta, {}, eta);
  return O;
}

// one color, only the unary identity
inline OperadSpec builder_triv(int cap) {
  OperadSpec O;
  O.name = "triv";
  O.signature = "triv:" + std::to_string(cap);
  O.colors = {"*"};
  O.arity_cap = cap;
  int id = O.add_op({0}, 0, "id");
  O.unit_ = {id};
  O.set_act(id, Perm{0}, id);
  O.set_gamma(id, {id}, id);
  return O;
}

// one color, operations of arity n = linear orders (words listing slots in
// multiplication order); act(w,σ) = σ∘w; gamma = splice with slot offsets
inline OperadSpec builder_assoc(int cap) {
  OperadSpec O;
  O.name = "assoc";
  O.signature = "assoc:" + std::to_string(cap);
  O.colors = {"*"};
  O.arity_cap = cap;
  std::map<std::vector<int>, int> op_of_word;
  std::vector<std::vector<int>> word_of_op;
  for (int n = 0; n <= cap; ++n)
    for (const auto& w : all_perms(n)) {
      std::string nm = "w";
      for (int v : w) nm += std::to_string(v);
      int id = O.add_op(std::vector<int>(static_cast<size_t>(n), 0), 0, nm);
      op_of_word[w] = id;
      word_of_op.push_back(w);
    }
  O.unit_ = {op_of_word[{0}]};
  for (int op = 0; op < O.num_ops(); ++op) {
    const auto& w = word_of_op[static_cast<size_t>(op)];
    for (const auto& s : all_perms(static_cast<int>(w.size())))
      O.set_act(op, s, op_of_word[compose_perm(s, w)]);
  }
  // gamma: splice child words into the outer word's multiplication order
  for (int op = 0; op < O.num_ops(); ++op) {
    int n = O.arity(op);
    const auto w = word_of_op[static_cast<size_t>(op)];
    std::vector<int> pattern;
    detail::arity_patterns(n, O.arity_cap, pattern, [&](const std::vector<int>& ms) {
      // iterate all tuples of child words with these arities
      std::vector<std::vector<std::vector<int>>> choices;
      for (int m : ms) choices.push_back(all_perms(m));
      std::vector<int> pick(static_cast<size_t>(n), 0);
      std::vector<int> offsets(static_cast<size_t>(n), 0);
      for (int i = 1; i < n; ++i)
        offsets[static_cast<size_t>(i)] = offsets[static_cast<size_t>(i - 1)] + ms[static_cast<size_t>(i - 1)];
      while (true) {
        std::vector<int> children;
        std::vector<int> spliced;
        for (int k : w) {  // outer multiplication order
          const auto& cw = choices[static_cast<size_t>(k)][static_cast<size_t>(pick[static_cast<size_t>(k)])];
          for (int v : cw) spliced.push_back(offsets[static_cast<size_t>(k)] + v);
        }
        for (int i = 0; i < n; ++i)
          children.push_back(op_of_word.at(choices[static_cast<size_t>(i)][static_cast<size_t>(pick[static_cast<size_t>(i)])]));
        O.set_gamma(op, children, op_of_word.at(spliced));
        int i = n - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] + 1 >= static_cast<int>(choices[static_cast<size_t>(i)].size()))
          pick[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++pick[static_cast<size_t>(i)];
      }
    });
  }
  return O;
}

// multimorphisms {x_i} -> y are tuples of K-morphisms (h_i: x_i -> y);
// composition composes in K, the symmetric action permutes factors
inline std::string category_signature(const FiniteCategory& K) {
  std::ostringstream os;
  os << K.name << "/" << K.num_objects() << "/";
  for (const auto& m : K.mors) os << m.src << ">" << m.dst << ";";
  for (const auto& [p, c] : K.comp_) os << p.first << "." << p.second << "=" << c << ";";
  return hex64(fnv1a(os.str()));
}

inline OperadSpec builder_cocartesian(const FiniteCategory& K, int cap) {
  OperadSpec O;
  O.name = "cocart(" + K.name + ")";
  O.signature = "cocartesian:" + category_signature(K) + ":" + std::to_string(cap);
  for (const auto& obj : K.objects) O.colors.push_back(obj);
  O.arity_cap = cap;
  std::map<std::pair<std::vector<int>, int>, int> op_of;  // (hom tuple, out) -> id
  std::vector<std::vector<int>> homs_of_op;
  // enumerate ops: profiles in lex order, hom tuples in lex order
  std::function<void(std::vector<int>&, int)> enum_profiles = [&](std::vector<int>& prof, int out) {
    // tuples of homs for this (prof, out)
    std::vector<const std::vector<int>*> cells;
    bool empty = false;
    for (int q : prof) {
      cells.push_back(&K.hom(q, out));
      if (cells.back()->empty()) empty = true;
    }
    if (!empty) {
      std::vector<int> pick(prof.size(), 0);
      while (true) {
        std::vector<int> homs;
        std::string nm = "<";
        for (size_t i = 0; i < prof.size(); ++i) {
          homs.push_back((*cells[i])[static_cast<size_t>(pick[i])]);
          nm += (i ? "," : "") + K.mors[static_cast<size_t>(homs.back())].name;
        }
        nm += ">";
        int id = O.add_op(prof, out, nm);
        op_of[{homs, out}] = id;
        homs_of_op.push_back(homs);
        int i = static_cast<int>(prof.size()) - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] + 1 >= static_cast<int>(cells[static_cast<size_t>(i)]->size()))
          pick[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++pick[static_cast<size_t>(i)];
      }
    }
  };
  for (int n = 0; n <= cap; ++n) {
    // iterate profiles of length n in lex order
    std::vector<int> prof(static_cast<size_t>(n), 0);
    while (true) {
      for (int out = 0; out < K.num_objects(); ++out) enum_profiles(prof, out);
      int i = n - 1;
      while (i >= 0 && prof[static_cast<size_t>(i)] + 1 >= K.num_objects()) prof[static_cast<size_t>(i--)] = 0;
      if (i < 0) break;
      ++prof[static_cast<size_t>(i)];
    }
  }
  O.unit_.clear();
  for (int c = 0; c < K.num_objects(); ++c) O.unit_.push_back(op_of.at({{K.identity(c)}, c}));
  for (int op = 0; op < O.num_ops(); ++op) {
    const auto& homs = homs_of_op[static_cast<size_t>(op)];
    int n = O.arity(op);
    for (const auto& s : all_perms(n)) {
      Perm inv = invert_perm(s);
      std::vector<int> permuted(homs.size());
      for (size_t t = 0; t < homs.size(); ++t) permuted[t] = homs[static_cast<size_t>(inv[t])];
      O.set_act(op, s, op_of.at({permuted, O.out(op)}));
    }
  }
  // gamma by composing in K
  for (int op = 0; op < O.num_ops(); ++op) {
    std::vector<int> pattern;
    detail::arity_patterns(O.arity(op), O.arity_cap, pattern, [&](const std::vector<int>& ms) {
      std::vector<int> tuple;
      std::function<void(int)> rec = [&](int slot) {
        if (slot == O.arity(op)) {
          std::vector<int> homs;
          for (size_t i = 0; i < tuple.size(); ++i)
            for (int h : homs_of_op[static_cast<size_t>(tuple[i])])
              homs.push_back(K.compose(homs_of_op[static_cast<size_t>(op)][i], h));
          O.set_gamma(op, tuple, op_of.at({homs, O.out(op)}));
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
  }
  O.op_data = homs_of_op;  // lets consumers recover the hom tuple of each op
  return O;
}

// ---------------------------------------------------------------------------
// Binary product: colors and operations are pairs, everything componentwise.
// gamma is evaluated lazily through the factors (full tables can explode).

struct ProductOperad {
  std::shared_ptr<OperadSpec> op;
  std::shared_ptr<OperadSpec> left, right;
  std::vector<std::pair<int, int>> color_pair, op_pair;
  std::map<std::pair<int, int>, int> color_of, op_of;
};

inline ProductOperad product_operad(const OperadSpec& A, const OperadSpec& B) {
  require(A.arity_cap == B.arity_cap, ErrorKind::structural,
          "product factors must share an arity cap");
  ProductOperad P;
  P.left = std::make_shared<OperadSpec>(A);
  P.right = std::make_shared<OperadSpec>(B);
  P.op = std::make_shared<OperadSpec>();
  auto& O = *P.op;
  O.name = A.name + "x" + B.name;
  O.signature = "product:" + A.signature + (A.signature.empty() ? A.content_hash() : "") + "|" +
                B.signature + (B.signature.empty() ? B.content_hash() : "");
  O.arity_cap = A.arity_cap;
  for (int a = 0; a < A.num_colors(); ++a)
    for (int b = 0; b < B.num_colors(); ++b) {
      O.colors.push_back("(" + A.colors[static_cast<size_t>(a)] + "," + B.colors[static_cast<size_t>(b)] + ")");
      P.color_pair.push_back({a, b});
      P.color_of[{a, b}] = static_cast<int>(O.colors.size()) - 1;
    }
  // ops: pair (φ,ψ) with equal arity and componentwise profile
  for (int fa = 0; fa < A.num_ops(); ++fa)
    for (int fb = 0; fb < B.num_ops(); ++fb) {
      if (A.arity(fa) != B.arity(fb)) continue;
      std::vector<int> prof;
      for (int i = 0; i < A.arity(fa); ++i)
        prof.push_back(P.color_of.at({A.profile(fa)[static_cast<size_t>(i)], B.profile(fb)[static_cast<size_t>(i)]}));
      int id = O.add_op(prof, P.color_of.at({A.out(fa), B.out(fb)}),
                        "(" + A.op_name(fa) + "," + B.op_name(fb) + ")");
      P.op_pair.push_back({fa, fb});
      P.op_of[{fa, fb}] = id;
    }
  for (int c = 0; c < O.num_colors(); ++c) {
    auto [a, b] = P.color_pair[static_cast<size_t>(c)];
    O.unit_.push_back(P.op_of.at({A.unit(a), B.unit(b)}));
  }
  for (int op = 0; op < O.num_ops(); ++op) {
    auto [fa, fb] = P.op_pair[static_cast<size_t>(op)];
    for (const auto& s : all_perms(O.arity(op)))
      O.set_act(op, s, P.op_of.at({A.act(fa, s), B.act(fb, s)}));
  }
  // lazy gamma through the factors
  auto left = P.left;
  auto right = P.right;
  auto op_pair = std::make_shared<std::vector<std::pair<int, int>>>(P.op_pair);
  auto op_of = std::make_shared<std::map<std::pair<int, int>, int>>(P.op_of);
  O.gamma_rule_ = [left, right, op_pair, op_of](const OperadSpec&, int op,
                                                const std::vector<int>& children) {
    auto [fa, fb] = (*op_pair)[static_cast<size_t>(op)];
    std::vector<int> ca, cb;
    for (int c : children) {
      ca.push_back((*op_pair)[static_cast<size_t>(c)].first);
      cb.push_back((*op_pair)[static_cast<size_t>(c)].second);
    }
    return op_of->at({left->gamma(fa, ca), right->gamma(fb, cb)});
  };
  return P;
}

// ---------------------------------------------------------------------------
// Operad morphisms.

struct OperadMorphism {
  std::string name = "p";
  std::shared_ptr<const OperadSpec> source, target;
  std::vector<int> color_map;
  std::vector<int> op_map;

  int map_color(int c) const { return color_map[static_cast<size_t>(c)]; }
  int map_op(int op) const { return op_map[static_cast<size_t>(op)]; }
};

inline LawReport check_operad_morphism(const OperadMorphism& p) {
  LawReport rep;
  rep.subject = "operad morphism " + p.source->name + " -> " + p.target->name;
  const auto& P = *p.source;
  const auto& O = *p.target;
  for (int op = 0; op < P.num_ops(); ++op) {
    ++rep.checked;
    int im = p.map_op(op);
    std::vector<int> want;
    for (int c : P.profile(op)) want.push_back(p.map_color(c));
    if (O.profile(im) != want || O.out(im) != p.map_color(P.out(op)))
      rep.note("profile not preserved on " + P.op_name(op));
  }
  if (!rep.ok()) return rep;
  for (int c = 0; c < P.num_colors(); ++c) {
    ++rep.checked;
    if (p.map_op(P.unit(c)) != O.unit(p.map_color(c)))
      rep.note("unit not preserved on color " + P.colors[static_cast<size_t>(c)]);
  }
  for (int op = 0; op < P.num_ops(); ++op)
    for (const auto& s : all_perms(P.arity(op))) {
      ++rep.checked;
      if (p.map_op(P.act(op, s)) != O.act(p.map_op(op), s))
        rep.note("symmetric action not preserved on " + P.op_name(op));
    }
  // gamma preservation over all composable tuples within the cap
  for (int op = 0; op < P.num_ops(); ++op) {
    std::vector<int> pattern;
    detail::arity_patterns(P.arity(op), P.arity_cap, pattern, [&](const std::vector<int>& ms) {
      std::vector<int> tuple;
      std::function<void(int)> rec = [&](int slot) {
        if (slot == P.arity(op)) {
          ++rep.checked;
          std::vector<int> mapped;
          for (int t : tuple) mapped.push_back(p.map_op(t));
          if (p.map_op(P.gamma(op, tuple)) != O.gamma(p.map_op(op), mapped))
            rep.note("gamma not preserved on " + P.op_name(op));
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

inline OperadMorphism identity_morphism(std::shared_ptr<const OperadSpec> O) {
  OperadMorphism p;
  p.name = "id";
  p.source = O;
  p.target = O;
  p.color_map = identity_perm(O->num_colors());
  p.op_map = identity_perm(O->num_ops());
  return p;
}

inline OperadMorphism product_projection(const ProductOperad& P, int which) {
  require(which == 0 || which == 1, ErrorKind::structural, "projection index must be 0 or 1");
  OperadMorphism p;
  p.name = which == 0 ? "pr1" : "pr2";
  p.source = P.op;
  p.target = which == 0 ? P.left : P.right;
  for (const auto& [a, b] : P.color_pair) p.color_map.push_back(which == 0 ? a : b);
  for (const auto& [fa, fb] : P.op_pair) p.op_map.push_back(which == 0 ? fa : fb);
  return p;
}

// The unique morphism determined by matching profiles when every operation has
// exactly one candidate image. Colors are matched by name when counts differ
// from 1; single-colored pairs map the obvious way.
inline OperadMorphism canonical_map(std::shared_ptr<const OperadSpec> P,
                                    std::shared_ptr<const OperadSpec> O) {
  OperadMorphism p;
  p.name = P->name + "->" + O->name;
  p.source = P;
  p.target = O;
  if (P->num_colors() == 1 && O->num_colors() == 1) {
    p.color_map = {0};
  } else {
    for (const auto& cn : P->colors) {
      int found = -1;
      for (int c = 0; c < O->num_colors(); ++c)
        if (O->colors[static_cast<size_t>(c)] == cn) found = c;
      require(found >= 0, ErrorKind::resolve,
              "no canonical morphism " + P->name + " -> " + O->name + ": color " + cn +
                  " has no name match");
      p.color_map.push_back(found);
    }
  }
  for (int op = 0; op < P->num_ops(); ++op) {
    std::vector<int> prof;
    for (int c : P->profile(op)) prof.push_back(p.map_color(c));
    const auto& candidates = O->mul(prof, p.map_color(P->out(op)));
    require(candidates.size() == 1, ErrorKind::resolve,
            "no canonical morphism " + P->name + " -> " + O->name + ": operation " +
                P->op_name(op) + " has " + std::to_string(candidates.size()) + " candidates");
    p.op_map.push_back(candidates[0]);
  }
  return p;
}

// collapse onto a commutative operad: all colors to the color, each operation
// to the unique one of its arity
inline OperadMorphism terminal_map(std::shared_ptr<const OperadSpec> O,
                                   std::shared_ptr<const OperadSpec> com) {
  OperadMorphism p;
  p.name = O->name + "->com";
  p.source = O;
  p.target = com;
  p.color_map.assign(static_cast<size_t>(O->num_colors()), 0);
  for (int op = 0; op < O->num_ops(); ++op) {
    const auto& cell = com->mul(std::vector<int>(static_cast<size_t>(O->arity(op)), 0), 0);
    require(cell.size() == 1, ErrorKind::structural, "terminal operad must have singleton cells");
    p.op_map.push_back(cell[0]);
  }
  return p;
}

}  // namespace envlab
