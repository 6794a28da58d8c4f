#include "stewart/prover.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "stewart/stewart_automaton.hpp"

namespace stewart {

namespace {

struct Rel {
  Dfa dfa;
  std::vector<std::string> vars;  // sorted, one per track
};

struct Constraint {
  Rel rel;
  std::string aux;
};

class UnionFind {
 public:
  void add(const std::string& v) { parent_.try_emplace(v, v); }

  std::string find(const std::string& v) {
    add(v);
    std::string root = v;
    while (parent_[root] != root) root = parent_[root];
    std::string cur = v;
    while (parent_[cur] != root) cur = std::exchange(parent_[cur], root);
    return root;
  }

  void unite(const std::string& a, const std::string& b, std::size_t pos) {
    const std::string ra = find(a);
    const std::string rb = find(b);
    if (ra == rb) return;
    const int ba = base(ra);
    const int bb = base(rb);
    if (ba && bb && ba != bb) {
      throw CompileError("variables " + display(a) + " and " + display(b) +
                             " have different bases (" + std::to_string(ba) +
                             " and " + std::to_string(bb) + ")",
                         pos + 1);
    }
    parent_[rb] = ra;
    if (!ba && bb) base_[ra] = bb;
  }

  void set_base(const std::string& v, int b, std::size_t pos) {
    const std::string r = find(v);
    const int cur = base(r);
    if (cur && cur != b) {
      throw CompileError("variable " + display(v) + " is used in base " +
                             std::to_string(cur) + " and base " + std::to_string(b),
                         pos + 1);
    }
    base_[r] = b;
  }

  int base(const std::string& root) const {
    auto it = base_.find(root);
    return it == base_.end() ? 0 : it->second;
  }

  static std::string display(const std::string& v) { return v.substr(0, v.find('#')); }

 private:
  std::unordered_map<std::string, std::string> parent_;
  std::unordered_map<std::string, int> base_;
};

/// Rewrites bound variables to unique internal names "v#k" so that later
/// stages can treat every variable name as global.
class Renamer {
 public:
  FormulaPtr rename(const FormulaPtr& f) {
    auto out = std::make_shared<Formula>(*f);
    switch (f->kind) {
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        std::vector<std::string> bound;
        for (std::string& v : out->vars) {
          auto it = scope_.find(v);
          if (it != scope_.end()) {
            throw CompileError("variable " + v + " is already bound", f->pos + 1);
          }
          const std::string fresh = v + "#" + std::to_string(++counter_);
          scope_[v] = fresh;
          bound.push_back(v);
          v = fresh;
        }
        out->lhs = rename(f->lhs);
        for (const auto& v : bound) scope_.erase(v);
        break;
      }
      case Formula::Kind::Not:
        out->lhs = rename(f->lhs);
        break;
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
      case Formula::Kind::Iff:
        out->lhs = rename(f->lhs);
        out->rhs = rename(f->rhs);
        break;
      case Formula::Kind::Compare:
        out->left_term = rename(f->left_term);
        out->right_term = rename(f->right_term);
        break;
      case Formula::Kind::WordConst:
        rename(out->left_word);
        break;
      case Formula::Kind::WordWord:
        rename(out->left_word);
        rename(out->right_word);
        break;
      case Formula::Kind::Call:
        for (TermPtr& a : out->args) a = rename(a);
        break;
    }
    return out;
  }

  const std::set<std::string>& free_vars() const { return free_; }

 private:
  void rename(WordRef& w) {
    for (TermPtr& i : w.indices) i = rename(i);
  }

  TermPtr rename(const TermPtr& t) {
    if (t->kind == Term::Kind::Var) {
      auto it = scope_.find(t->name);
      if (it != scope_.end()) return Term::var(it->second, t->pos);
      free_.insert(t->name);
      return t;
    }
    if (t->kind == Term::Kind::Const) return t;
    auto out = std::make_shared<Term>(*t);
    if (t->lhs) out->lhs = rename(t->lhs);
    if (t->rhs) out->rhs = rename(t->rhs);
    return out;
  }

  std::map<std::string, std::string> scope_;
  std::set<std::string> free_;
  int counter_ = 0;
};

std::vector<std::string> term_vars(const Term& t) {
  std::vector<std::string> v;
  collect_vars(t, v);
  return v;
}

std::optional<std::uint64_t> const_value(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return std::nullopt;
    case Term::Kind::Const: return t.value;
    case Term::Kind::Add: {
      auto a = const_value(*t.lhs), b = const_value(*t.rhs);
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case Term::Kind::Sub: {
      auto a = const_value(*t.lhs), b = const_value(*t.rhs);
      if (!a || !b || *b > *a) return std::nullopt;
      return *a - *b;
    }
    case Term::Kind::Mul: {
      auto a = const_value(*t.lhs);
      if (!a) return std::nullopt;
      return *a * t.value;
    }
    case Term::Kind::Div: {
      auto a = const_value(*t.lhs);
      if (!a) return std::nullopt;
      return *a / t.value;
    }
  }
  return std::nullopt;
}

bool has_vars(const Term& t) { return !term_vars(t).empty(); }

class Compiler {
 public:
  Compiler(const Session& session, int default_base)
      : s_(session), default_base_(default_base) {}

  Compiled run(const FormulaPtr& root) {
    Renamer renamer;
    FormulaPtr f = renamer.rename(root);
    infer(*f);
    Rel r = compile(*f);
    return Compiled{std::move(r.dfa), std::move(r.vars)};
  }

 private:
  // ---- base inference ----

  void unite_all(const std::vector<std::string>& vars, std::size_t pos) {
    for (const auto& v : vars) uf_.add(v);
    for (std::size_t i = 1; i < vars.size(); ++i) uf_.unite(vars[0], vars[i], pos);
  }

  void constrain_term(const Term& t, int base) {
    const auto vars = term_vars(t);
    unite_all(vars, t.pos);
    if (!vars.empty()) uf_.set_base(vars[0], base, t.pos);
  }

  const Dfao& word(const WordRef& w, std::size_t pos) const {
    const Dfao* m = s_.find_word(w.name);
    if (!m) throw CompileError("unknown word automaton " + w.name, pos + 1);
    if (m->num_tracks() != w.indices.size()) {
      throw CompileError(w.name + " takes " + std::to_string(m->num_tracks()) +
                             " indices, got " + std::to_string(w.indices.size()),
                         pos + 1);
    }
    return *m;
  }

  const NamedAutomaton& callee(const Formula& f) const {
    const NamedAutomaton* a = s_.find_automaton(f.name);
    if (!a && f.name == "link7" && !s_.strict) a = s_.find_automaton("link");
    if (!a) throw CompileError("unknown predicate $" + f.name, f.pos + 1);
    if (a->dfa.num_tracks() != f.args.size()) {
      throw CompileError("$" + f.name + " takes " +
                             std::to_string(a->dfa.num_tracks()) + " arguments, got " +
                             std::to_string(f.args.size()),
                         f.pos + 1);
    }
    return *a;
  }

  void infer(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Exists:
      case K::Forall:
        infer(*f.lhs);
        break;
      case K::Not:
        infer(*f.lhs);
        break;
      case K::And:
      case K::Or:
      case K::Implies:
      case K::Iff:
        infer(*f.lhs);
        infer(*f.rhs);
        break;
      case K::Compare: {
        auto vars = term_vars(*f.left_term);
        collect_vars(*f.right_term, vars);
        unite_all(vars, f.pos);
        break;
      }
      case K::WordConst:
      case K::WordWord: {
        for (const WordRef* w : {&f.left_word, &f.right_word}) {
          if (w->name.empty()) continue;
          const Dfao& m = word(*w, f.pos);
          for (std::size_t i = 0; i < w->indices.size(); ++i) {
            constrain_term(*w->indices[i], m.bases()[i]);
          }
        }
        break;
      }
      case K::Call: {
        const NamedAutomaton& a = callee(f);
        for (std::size_t i = 0; i < f.args.size(); ++i) {
          constrain_term(*f.args[i], a.dfa.bases()[i]);
        }
        break;
      }
    }
  }

  int base_of(const std::string& v, std::size_t pos) {
    const int b = uf_.base(uf_.find(v));
    if (b) return b;
    if (default_base_) return default_base_;
    throw CompileError("cannot infer a base for " + UnionFind::display(v) +
                           "; add a ?lsd_k prefix",
                       pos + 1);
  }

  int term_base(const Term& t) {
    const auto vars = term_vars(t);
    return vars.empty() ? 0 : base_of(vars[0], t.pos);
  }

  // ---- relations ----

  std::vector<int> bases_of(const std::vector<std::string>& vars) {
    std::vector<int> b;
    b.reserve(vars.size());
    for (const auto& v : vars) b.push_back(var_base_.at(v));
    return b;
  }

  Rel make(const Dfa& d, const std::vector<std::string>& track_vars) {
    std::vector<std::string> vars = track_vars;
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars == track_vars) return Rel{d, std::move(vars)};
    std::vector<std::size_t> wiring;
    for (const auto& v : track_vars) {
      wiring.push_back(static_cast<std::size_t>(
          std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()));
    }
    return Rel{rewire(d, wiring, bases_of(vars), s_.limits), std::move(vars)};
  }

  Rel conj(const Rel& a, const Rel& b, BoolOp op) {
    std::vector<std::string> vars;
    std::set_union(a.vars.begin(), a.vars.end(), b.vars.begin(), b.vars.end(),
                   std::back_inserter(vars));
    auto wiring = [&](const Rel& r) {
      std::vector<std::size_t> w;
      for (const auto& v : r.vars) {
        w.push_back(static_cast<std::size_t>(
            std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()));
      }
      return w;
    };
    const auto wa = wiring(a);
    const auto wb = wiring(b);
    Dfa d = combine(a.dfa, wa, b.dfa, wb, bases_of(vars), op, s_.limits);
    return Rel{std::move(d), std::move(vars)};
  }

  Rel exists(Rel r, const std::string& v) {
    auto it = std::lower_bound(r.vars.begin(), r.vars.end(), v);
    if (it == r.vars.end() || *it != v) return r;
    if (r.vars.size() == 1) {
      return Rel{is_empty(r.dfa) ? Dfa::empty({}) : Dfa::universal({}), {}};
    }
    const auto track = static_cast<std::size_t>(it - r.vars.begin());
    r.vars.erase(it);
    return Rel{project(r.dfa, track, s_.limits), std::move(r.vars)};
  }

  static Rel negate(const Rel& r) { return Rel{complement(r.dfa), r.vars}; }

  static Rel truth(bool value) {
    return Rel{value ? Dfa::universal({}) : Dfa::empty({}), {}};
  }

  // ---- terms ----

  std::string fresh_aux(int base) {
    std::string name = "#aux" + std::to_string(++aux_counter_);
    var_base_[name] = base;
    return name;
  }

  std::string lower(const Term& t, int base, std::vector<Constraint>& out) {
    switch (t.kind) {
      case Term::Kind::Var: {
        const int b = base_of(t.name, t.pos);
        var_base_[t.name] = b;
        return t.name;
      }
      case Term::Kind::Const: {
        std::string z = fresh_aux(base);
        out.push_back({make(rel_const(t.value, base), {z}), z});
        return z;
      }
      case Term::Kind::Add:
      case Term::Kind::Sub: {
        const std::string a = lower(*t.lhs, base, out);
        const std::string b = lower(*t.rhs, base, out);
        std::string z = fresh_aux(base);
        const std::vector<std::string> tracks =
            t.kind == Term::Kind::Add ? std::vector<std::string>{a, b, z}
                                      : std::vector<std::string>{z, b, a};
        out.push_back({make(rel_add(base), tracks), z});
        return z;
      }
      case Term::Kind::Mul:
      case Term::Kind::Div: {
        if (t.value == 0) throw CompileError("constant factor must be positive", t.pos + 1);
        const std::string a = lower(*t.lhs, base, out);
        std::string z = fresh_aux(base);
        const Dfa& rel = t.kind == Term::Kind::Mul ? s_.mul(t.value, base)
                                                   : s_.div(t.value, base);
        out.push_back({make(rel, {a, z}), z});
        return z;
      }
    }
    return {};
  }

  /// Conjoins the term constraints with `core`, outermost first, and
  /// projects each auxiliary variable once its defining relation is in.
  Rel close(Rel core, std::vector<Constraint>& cs) {
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
      core = conj(core, it->rel, BoolOp::And);
      core = exists(std::move(core), it->aux);
    }
    return core;
  }

  // ---- formulas ----

  Rel compile(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Exists: {
        Rel r = compile(*f.lhs);
        for (auto v = f.vars.rbegin(); v != f.vars.rend(); ++v) r = exists(std::move(r), *v);
        return r;
      }
      case K::Forall: {
        Rel r = negate(compile(*f.lhs));
        for (auto v = f.vars.rbegin(); v != f.vars.rend(); ++v) r = exists(std::move(r), *v);
        return negate(r);
      }
      case K::Not:
        return negate(compile(*f.lhs));
      case K::And:
        return conj(compile(*f.lhs), compile(*f.rhs), BoolOp::And);
      case K::Or:
        return conj(compile(*f.lhs), compile(*f.rhs), BoolOp::Or);
      case K::Implies:
        return conj(compile(*f.lhs), compile(*f.rhs), BoolOp::Implies);
      case K::Iff:
        return conj(compile(*f.lhs), compile(*f.rhs), BoolOp::Iff);
      case K::Compare:
        return compile_compare(f);
      case K::WordConst:
      case K::WordWord:
        return compile_word(f);
      case K::Call:
        return compile_call(f);
    }
    return truth(false);
  }

  Rel compile_compare(const Formula& f) {
    const bool lv = has_vars(*f.left_term);
    const bool rv = has_vars(*f.right_term);
    if (!lv && !rv) {
      const auto a = const_value(*f.left_term);
      const auto b = const_value(*f.right_term);
      if (!a || !b) return truth(false);
      switch (f.op) {
        case CompareOp::Eq: return truth(*a == *b);
        case CompareOp::Ne: return truth(*a != *b);
        case CompareOp::Lt: return truth(*a < *b);
        case CompareOp::Le: return truth(*a <= *b);
        case CompareOp::Gt: return truth(*a > *b);
        case CompareOp::Ge: return truth(*a >= *b);
      }
    }
    const int base = term_base(lv ? *f.left_term : *f.right_term);
    std::vector<Constraint> cs;
    const std::string a = lower(*f.left_term, base, cs);
    const std::string b = lower(*f.right_term, base, cs);
    Rel core = [&] {
      switch (f.op) {
        case CompareOp::Eq: return make(rel_eq(base), {a, b});
        case CompareOp::Ne: return make(complement(rel_eq(base)), {a, b});
        case CompareOp::Lt: return make(rel_lt(base), {a, b});
        case CompareOp::Le: return make(rel_leq(base), {a, b});
        case CompareOp::Gt: return make(rel_lt(base), {b, a});
        case CompareOp::Ge: return make(rel_leq(base), {b, a});
      }
      return truth(false);
    }();
    return close(std::move(core), cs);
  }

  std::vector<std::string> lower_indices(const WordRef& w, const Dfao& m,
                                         std::vector<Constraint>& cs) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < w.indices.size(); ++i) {
      out.push_back(lower(*w.indices[i], m.bases()[i], cs));
    }
    return out;
  }

  static std::vector<int> output_values(const Dfao& m) {
    std::vector<int> v = m.outputs();
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  Rel output_rel(const WordRef& w, int value, const std::vector<std::string>& tracks) {
    return make(s_.word_output(w.name, value), tracks);
  }

  Rel compile_word(const Formula& f) {
    std::vector<Constraint> cs;
    const Dfao& lm = word(f.left_word, f.pos);
    const auto lt = lower_indices(f.left_word, lm, cs);
    const std::vector<int> lvals = output_values(lm);

    std::optional<Rel> core;
    auto add = [&](Rel r) {
      core = core ? conj(*core, r, BoolOp::Or) : std::move(r);
    };

    const bool negated = f.op == CompareOp::Ne && s_.negated_inequality;
    const bool want_eq = f.op == CompareOp::Eq || negated;
    if (f.kind == Formula::Kind::WordConst) {
      for (int k : lvals) {
        if ((k == f.constant) == want_eq) add(output_rel(f.left_word, k, lt));
      }
      if (!core) core = make(Dfa::empty(bases_of(sorted_unique(lt))), sorted_unique(lt));
      if (negated) core = negate(*core);
      return close(std::move(*core), cs);
    }

    const Dfao& rm = word(f.right_word, f.pos);
    const auto rt = lower_indices(f.right_word, rm, cs);
    const std::vector<int> rvals = output_values(rm);
    for (int k : lvals) {
      for (int m : rvals) {
        if ((k == m) != want_eq) continue;
        add(conj(output_rel(f.left_word, k, lt), output_rel(f.right_word, m, rt),
                 BoolOp::And));
      }
    }
    if (!core) {
      std::vector<std::string> all = lt;
      all.insert(all.end(), rt.begin(), rt.end());
      all = sorted_unique(all);
      core = make(Dfa::empty(bases_of(all)), all);
    }
    if (negated) core = negate(*core);
    return close(std::move(*core), cs);
  }

  Rel compile_call(const Formula& f) {
    const NamedAutomaton& a = callee(f);
    std::vector<Constraint> cs;
    std::vector<std::string> tracks;
    for (std::size_t i = 0; i < f.args.size(); ++i) {
      tracks.push_back(lower(*f.args[i], a.dfa.bases()[i], cs));
    }
    return close(make(a.dfa, tracks), cs);
  }

  static std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  const Session& s_;
  int default_base_;
  UnionFind uf_;
  std::map<std::string, int> var_base_;
  int aux_counter_ = 0;
};

}  // namespace

Session Session::with_builtins() {
  Session s;
  s.add_word("TP", stewart_automaton());
  const std::map<std::string_view, std::vector<std::string>> params = {
      {"pref", {"t1", "t2"}}, {"link", {"x", "t"}},       {"bnd", {"x", "y"}},
      {"power3", {"x"}},      {"differ", {"t", "u", "x"}},
  };
  for (const BuiltinRegex& r : builtin_regexes()) {
    s.register_regex(std::string(r.name), {r.bases, std::string(r.pattern)},
                     params.at(r.name));
  }
  return s;
}

void Session::add_word(const std::string& name, Dfao word) {
  if (has_name(name)) throw std::invalid_argument("name already defined: " + name);
  words_.emplace(name, std::move(word));
}

void Session::add_automaton(const std::string& name, NamedAutomaton a) {
  if (has_name(name)) throw std::invalid_argument("name already defined: " + name);
  if (a.params.size() != a.dfa.num_tracks()) {
    throw std::invalid_argument("parameter count does not match the track count");
  }
  automata_.emplace(name, std::move(a));
}

bool Session::has_name(const std::string& name) const {
  return automata_.count(name) || words_.count(name);
}

const NamedAutomaton* Session::find_automaton(const std::string& name) const {
  auto it = automata_.find(name);
  return it == automata_.end() ? nullptr : &it->second;
}

const Dfao* Session::find_word(const std::string& name) const {
  auto it = words_.find(name);
  return it == words_.end() ? nullptr : &it->second;
}

std::vector<std::string> Session::automaton_names() const {
  std::vector<std::string> names;
  for (const auto& [name, _] : automata_) names.push_back(name);
  return names;
}

Compiled Session::compile(const ParsedFormula& f) const {
  return Compiler(*this, f.base ? f.base : default_base).run(f.root);
}

Compiled Session::compile(std::string_view text) const {
  return compile(parse_formula(text));
}

bool Session::eval_closed(std::string_view text) const {
  Compiled c = compile(text);
  if (!c.vars.empty()) {
    std::string list;
    for (const auto& v : c.vars) list += (list.empty() ? "" : ",") + v;
    throw CompileError("formula has free variables: " + list, 0);
  }
  return c.dfa.accepting(c.dfa.initial());
}

const NamedAutomaton& Session::define(
    const std::string& name, std::string_view text,
    const std::optional<std::vector<std::string>>& var_order) {
  if (has_name(name)) throw std::invalid_argument("name already defined: " + name);
  Compiled c = compile(text);
  NamedAutomaton a{std::move(c.dfa), c.vars};
  if (var_order) {
    std::vector<std::string> sorted = *var_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != c.vars) {
      throw CompileError("declared variables do not match the free variables of " +
                             name,
                         0);
    }
    std::vector<std::size_t> wiring;
    for (const auto& v : c.vars) {
      wiring.push_back(static_cast<std::size_t>(
          std::find(var_order->begin(), var_order->end(), v) - var_order->begin()));
    }
    std::vector<int> bases(var_order->size());
    for (std::size_t i = 0; i < wiring.size(); ++i) bases[wiring[i]] = a.dfa.bases()[i];
    a.dfa = rewire(a.dfa, wiring, bases, limits);
    a.params = *var_order;
  }
  automata_.emplace(name, std::move(a));
  return automata_.at(name);
}

const NamedAutomaton& Session::register_regex(const std::string& name,
                                              const RegexOverTuples& r,
                                              std::vector<std::string> params) {
  if (has_name(name)) throw std::invalid_argument("name already defined: " + name);
  if (params.empty()) {
    for (std::size_t i = 0; i < r.bases.size(); ++i) params.push_back("x" + std::to_string(i));
  }
  add_automaton(name, {compile_regex(r, limits), std::move(params)});
  return automata_.at(name);
}

const Dfa& Session::word_output(const std::string& word, int value) const {
  const auto key = std::make_pair(word, value);
  auto it = output_cache_.find(key);
  if (it != output_cache_.end()) return it->second;
  return output_cache_.emplace(key, output_language(words_.at(word), value))
      .first->second;
}

const Dfa& Session::mul(std::uint64_t c, int base) const {
  const auto key = std::make_tuple('*', c, base);
  auto it = arith_cache_.find(key);
  if (it != arith_cache_.end()) return it->second;
  return arith_cache_.emplace(key, mul_const(c, base, limits)).first->second;
}

const Dfa& Session::div(std::uint64_t c, int base) const {
  const auto key = std::make_tuple('/', c, base);
  auto it = arith_cache_.find(key);
  if (it != arith_cache_.end()) return it->second;
  return arith_cache_.emplace(key, div_const(c, base, limits)).first->second;
}

}  // namespace stewart
