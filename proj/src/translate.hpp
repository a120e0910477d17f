#pragma once

#include "fixgame/syntax.hpp"

#include <map>
#include <optional>

namespace fixgame::detail {

template <class E>
using Compiled = std::function<E(std::span<const E>)>;

// Front-end semantics of everything that is not a variable or a binder.
template <class E>
struct Semantics {
  // Identifiers that are not variables, and number literals.
  std::function<Compiled<E>(const Expr&)> leaf;
  // Unary, binary and call nodes, with compiled children.
  std::function<Compiled<E>(const Expr&, std::vector<Compiled<E>>)> node;
};

template <class E>
struct Translation {
  std::vector<Equation<E>> equations;
  std::size_t target = 0;
};

template <class E>
class Translator {
 public:
  explicit Translator(const Semantics<E>& sem) : sem_(sem) {}

  // One equation per binder, innermost first; a closed body without a binder
  // on top gets a synthetic last ν-equation.
  Translation<E> formula(const Expr& e) {
    number(e);
    bool synthetic = e.kind != Expr::Kind::binder;
    m_ = order_.size() + (synthetic ? 1 : 0);
    equations_.resize(m_);
    Compiled<E> top = compile(e);
    Translation<E> out;
    if (synthetic) {
      equations_.back() = Equation<E>{fresh("x"), Sign::nu, {m_, top, to_string(e)}};
      out.target = m_ - 1;
    } else {
      out.target = index_.at(&e);
    }
    out.equations = std::move(equations_);
    return out;
  }

  // Equations named by the DSL; bodies may not bind.
  std::vector<Equation<E>> system(const std::vector<DslEquation>& eqs) {
    m_ = eqs.size();
    for (std::size_t i = 0; i < m_; ++i) scope_.emplace_back(eqs[i].name, i);
    std::vector<Equation<E>> out;
    for (const auto& eq : eqs) {
      forbid_binders(eq.body);
      out.push_back({eq.name, eq.sign, {m_, compile(eq.body), to_string(eq.body)}});
    }
    return out;
  }

 private:
  void number(const Expr& e) {
    for (const auto& k : e.kids) number(k);
    if (e.kind == Expr::Kind::binder) {
      index_[&e] = order_.size();
      order_.push_back(&e);
    }
  }

  std::string fresh(const std::string& base) {
    std::string name = base;
    for (int k = 2; used_.count(name); ++k) name = base + "_" + std::to_string(k);
    used_.insert(name);
    return name;
  }

  static void forbid_binders(const Expr& e) {
    if (e.kind == Expr::Kind::binder) throw ParseError(e.pos, "fixpoint binders are not allowed in equations");
    for (const auto& k : e.kids) forbid_binders(k);
  }

  Compiled<E> compile(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::ident:
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == e.text) {
            std::size_t j = it->second;
            return [j](std::span<const E> x) { return x[j]; };
          }
        return sem_.leaf(e);
      case Expr::Kind::number:
        return sem_.leaf(e);
      case Expr::Kind::binder: {
        std::size_t i = index_.at(&e);
        scope_.emplace_back(e.text, i);
        Compiled<E> body = compile(e.kids[0]);
        scope_.pop_back();
        equations_[i] = Equation<E>{fresh(e.text), e.sign, {m_, body, to_string(e.kids[0])}};
        return [i](std::span<const E> x) { return x[i]; };
      }
      default: {
        std::vector<Compiled<E>> kids;
        for (const auto& k : e.kids) kids.push_back(compile(k));
        return sem_.node(e, std::move(kids));
      }
    }
  }

  const Semantics<E>& sem_;
  std::map<const Expr*, std::size_t> index_;
  std::vector<const Expr*> order_;
  std::vector<std::pair<std::string, std::size_t>> scope_;
  std::vector<Equation<E>> equations_;
  std::set<std::string> used_;
  std::size_t m_ = 0;
};

[[noreturn]] inline void not_supported(const Expr& e, const std::string& language) {
  std::string what = e.kind == Expr::Kind::number ? "number " + e.text
                     : e.kind == Expr::Kind::ident ? "free variable or unknown name '" + e.text + "'"
                     : e.kind == Expr::Kind::call  ? "function " + e.text + "(...)"
                                                    : "operator " + e.text;
  throw ParseError(e.pos, what + " is not supported in " + language);
}

}  // namespace fixgame::detail
