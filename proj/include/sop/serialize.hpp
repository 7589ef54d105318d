#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sop/errors.hpp"
#include "sop/rewrite.hpp"
#include "sop/term.hpp"
#include "sop/zh.hpp"

namespace sop {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Boolean polynomials
// ---------------------------------------------------------------------------

/// A polynomial is an array of monomials; a monomial is an array of variable
/// ids (the empty array is the constant 1).  [] is the zero polynomial.
inline Json boolpoly_to_json(const BoolPoly& p) {
  Json arr = Json::array();
  for (const auto& m : p.monomials()) arr.push_back(m.vars());
  return arr;
}

inline BoolPoly boolpoly_from_json(const Json& j) {
  std::vector<BoolMonomial> monos;
  for (const auto& jm : j) monos.push_back(BoolMonomial(jm.get<std::vector<Var>>()));
  return BoolPoly(std::move(monos));
}

/// Parses the textual form produced by BoolPoly::str():
/// "0", "1", "y0*y1+y2+1" and friends.  Whitespace is ignored.
inline BoolPoly parse_boolpoly(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw SyntaxError("empty polynomial text");
  if (s == "0") return BoolPoly::zero();

  std::vector<BoolMonomial> monos;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t plus = s.find('+', pos);
    std::string_view part(s.data() + pos, (plus == std::string::npos ? s.size() : plus) - pos);
    if (part.empty()) throw SyntaxError("empty summand in polynomial '" + s + "'");
    std::vector<Var> vars;
    bool is_const_one = false;
    std::size_t fpos = 0;
    while (fpos <= part.size()) {
      std::size_t star = part.find('*', fpos);
      std::string_view factor = part.substr(fpos, (star == std::string_view::npos ? part.size() : star) - fpos);
      if (factor == "1") {
        is_const_one = true;
      } else if (factor.size() >= 2 && factor[0] == 'y') {
        Var v = 0;
        auto [ptr, ec] = std::from_chars(factor.data() + 1, factor.data() + factor.size(), v);
        if (ec != std::errc() || ptr != factor.data() + factor.size())
          throw SyntaxError("bad variable '" + std::string(factor) + "'");
        vars.push_back(v);
      } else {
        throw SyntaxError("bad factor '" + std::string(factor) + "'");
      }
      if (star == std::string_view::npos) break;
      fpos = star + 1;
    }
    if (vars.empty() && !is_const_one) throw SyntaxError("empty monomial in polynomial '" + s + "'");
    monos.push_back(BoolMonomial(std::move(vars)));
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return BoolPoly(std::move(monos));
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

inline Json term_to_json(const SopTerm& t) {
  Json j;
  j["halfpow"] = t.halfpow;
  j["vars"] = t.vars;
  Json phase = Json::array();
  for (const auto& [m, c] : t.phase.terms())
    phase.push_back({{"mono", m.vars()}, {"num", c.num()}, {"denomLog", c.denom_log()}});
  j["phase"] = std::move(phase);
  Json outs = Json::array(), ins = Json::array();
  for (const auto& p : t.outputs) outs.push_back(boolpoly_to_json(p));
  for (const auto& p : t.inputs) ins.push_back(boolpoly_to_json(p));
  j["outputs"] = std::move(outs);
  j["inputs"] = std::move(ins);
  return j;
}

inline SopTerm term_from_json(const Json& j) {
  PhasePoly phase;
  for (const auto& jt : j.at("phase")) {
    auto num = jt.at("num").get<std::int64_t>();
    int dl = jt.at("denomLog").get<int>();
    phase.add_term(BoolMonomial(jt.at("mono").get<std::vector<Var>>()), DyadicMod1(num, dl));
  }
  std::vector<BoolPoly> outs, ins;
  for (const auto& jp : j.at("outputs")) outs.push_back(boolpoly_from_json(jp));
  for (const auto& jp : j.at("inputs")) ins.push_back(boolpoly_from_json(jp));
  return make_term(j.at("halfpow").get<int>(), j.at("vars").get<std::vector<Var>>(), std::move(phase),
                   std::move(outs), std::move(ins));
}

// ---------------------------------------------------------------------------
// Rewrite traces and strategies
// ---------------------------------------------------------------------------

inline Json step_to_json(const RewriteStep& s) {
  Json j;
  j["rule"] = rule_name(s.rule);
  j["pivots"] = s.pivots;
  j["halfpowDelta"] = s.halfpow_delta;
  if (s.index) j["index"] = *s.index;
  if (s.subst) j["subst"] = {{"var", s.subst->first}, {"poly", s.subst->second.str()}};
  return j;
}

inline RewriteStep step_from_json(const Json& j) {
  RewriteStep s;
  auto rk = rule_from_name(j.at("rule").get<std::string>());
  if (!rk) throw Error("unknown rule name '" + j.at("rule").get<std::string>() + "'");
  s.rule = *rk;
  s.pivots = j.at("pivots").get<std::vector<Var>>();
  s.halfpow_delta = j.value("halfpowDelta", 0);
  if (j.contains("index")) s.index = j.at("index").get<std::size_t>();
  if (j.contains("subst"))
    s.subst = std::make_pair(j.at("subst").at("var").get<Var>(),
                             parse_boolpoly(j.at("subst").at("poly").get<std::string>()));
  return s;
}

inline Json trace_to_json(const std::vector<RewriteStep>& trace) {
  Json arr = Json::array();
  for (const auto& s : trace) arr.push_back(step_to_json(s));
  return arr;
}

inline std::vector<RewriteStep> trace_from_json(const Json& j) {
  std::vector<RewriteStep> trace;
  for (const auto& js : j) trace.push_back(step_from_json(js));
  return trace;
}

inline Json strategy_to_json(const Strategy& s) {
  Json names = Json::array();
  for (RuleKind k : s.priority) names.push_back(rule_name(k));
  Json j;
  j["priority"] = std::move(names);
  j["scan"] = s.scan == ScanOrder::Ascending ? "ascending" : "descending";
  j["stepLimit"] = s.step_limit;
  j["ketBraPasses"] = s.ket_bra_passes ? Json(*s.ket_bra_passes) : Json(nullptr);
  return j;
}

/// Reads a strategy, with absent fields keeping their values from `base`.
inline Strategy strategy_from_json(const Json& j, Strategy base = default_strategy()) {
  if (j.contains("priority")) {
    base.priority.clear();
    for (const auto& jn : j.at("priority")) {
      auto rk = rule_from_name(jn.get<std::string>());
      if (!rk) throw Error("unknown rule name '" + jn.get<std::string>() + "' in strategy");
      if (*rk == RuleKind::Ket || *rk == RuleKind::Bra)
        throw Error("ket/bra run in their own pass and cannot appear in the priority list");
      base.priority.push_back(*rk);
    }
  }
  if (j.contains("scan")) {
    std::string sc = j.at("scan").get<std::string>();
    if (sc == "ascending")
      base.scan = ScanOrder::Ascending;
    else if (sc == "descending")
      base.scan = ScanOrder::Descending;
    else
      throw Error("scan must be 'ascending' or 'descending'");
  }
  if (j.contains("stepLimit")) base.step_limit = j.at("stepLimit").get<std::uint64_t>();
  if (j.contains("ketBraPasses")) {
    if (j.at("ketBraPasses").is_null())
      base.ket_bra_passes = std::nullopt;
    else
      base.ket_bra_passes = j.at("ketBraPasses").get<std::size_t>();
  }
  return base;
}

// ---------------------------------------------------------------------------
// ZH diagrams
// ---------------------------------------------------------------------------

inline Json hparam_to_json(const HParam& p) {
  if (const auto* ph = std::get_if<ExactPhase>(&p)) return {{"type", "phase"}, {"a", ph->a}, {"b", ph->b}};
  if (const auto* re = std::get_if<ExactReal>(&p))
    return {{"type", "real"}, {"num", re->num}, {"denomLog", re->denom_log}, {"half", re->half}};
  return {{"type", "float"}, {"value", std::get<double>(p)}};
}

inline HParam hparam_from_json(const Json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "phase") return ExactPhase{j.at("a").get<std::int64_t>(), j.at("b").get<int>()};
  if (type == "real")
    return ExactReal{j.at("num").get<std::int64_t>(), j.at("denomLog").get<int>(), j.at("half").get<bool>()};
  if (type == "float") return j.at("value").get<double>();
  throw Error("unknown box label type '" + type + "'");
}

inline Json zh_to_json(const ZhPtr& d) {
  if (!d) throw Error("cannot serialize a null diagram");
  using K = ZhDiagram::Kind;
  switch (d->kind) {
    case K::ZSpider: return {{"kind", "z"}, {"in", d->n}, {"out", d->m}};
    case K::HSpider: return {{"kind", "h"}, {"in", d->n}, {"out", d->m}, {"param", hparam_to_json(d->param)}};
    case K::Swap: return {{"kind", "swap"}};
    case K::Cup: return {{"kind", "cup"}};
    case K::Cap: return {{"kind", "cap"}};
    case K::Id: return {{"kind", "id"}, {"wires", d->n}};
    case K::Scalar: return {{"kind", "scalar"}, {"param", hparam_to_json(d->param)}};
    case K::And: return {{"kind", "and"}, {"legs", d->n}};
    case K::Xor: return {{"kind", "xor"}, {"legs", d->n}};
    case K::Copy: return {{"kind", "copy"}, {"legs", d->m}};
    case K::Not: return {{"kind", "not"}};
    case K::Compose: return {{"kind", "compose"}, {"left", zh_to_json(d->left)}, {"right", zh_to_json(d->right)}};
    case K::Tensor: return {{"kind", "tensor"}, {"left", zh_to_json(d->left)}, {"right", zh_to_json(d->right)}};
  }
  throw Error("unhandled diagram kind");
}

inline ZhPtr zh_from_json(const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "z") return zh_z(j.at("in").get<std::size_t>(), j.at("out").get<std::size_t>());
  if (kind == "h")
    return zh_h(j.at("in").get<std::size_t>(), j.at("out").get<std::size_t>(), hparam_from_json(j.at("param")));
  if (kind == "swap") return zh_swap();
  if (kind == "cup") return zh_cup();
  if (kind == "cap") return zh_cap();
  if (kind == "id") return zh_id(j.at("wires").get<std::size_t>());
  if (kind == "scalar") return zh_scalar(hparam_from_json(j.at("param")));
  if (kind == "and") return zh_and(j.at("legs").get<std::size_t>());
  if (kind == "xor") return zh_xor(j.at("legs").get<std::size_t>());
  if (kind == "copy") return zh_copy(j.at("legs").get<std::size_t>());
  if (kind == "not") return zh_not();
  if (kind == "compose") return zh_compose(zh_from_json(j.at("left")), zh_from_json(j.at("right")));
  if (kind == "tensor") return zh_tensor(zh_from_json(j.at("left")), zh_from_json(j.at("right")));
  throw Error("unknown diagram kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// Graphviz rendering of the diagram tree
// ---------------------------------------------------------------------------

inline std::string hparam_str(const HParam& p) {
  if (const auto* ph = std::get_if<ExactPhase>(&p))
    return "exp(i pi " + std::to_string(ph->a) + "/2^" + std::to_string(ph->b) + ")";
  if (const auto* re = std::get_if<ExactReal>(&p)) {
    std::string s = std::to_string(re->num);
    if (re->denom_log > 0) s += "/2^" + std::to_string(re->denom_log);
    if (re->half) s += " sqrt(2)";
    return s;
  }
  return std::to_string(std::get<double>(p));
}

namespace detail {

inline std::string zh_node_label(const ZhDiagram& d) {
  using K = ZhDiagram::Kind;
  auto arity = [&] { return "(" + std::to_string(d.n) + "->" + std::to_string(d.m) + ")"; };
  switch (d.kind) {
    case K::ZSpider: return "Z" + arity();
    case K::HSpider: return "H" + arity() + " " + hparam_str(d.param);
    case K::Swap: return "swap";
    case K::Cup: return "cup";
    case K::Cap: return "cap";
    case K::Id: return "id(" + std::to_string(d.n) + ")";
    case K::Scalar: return "scalar " + hparam_str(d.param);
    case K::And: return "and(" + std::to_string(d.n) + ")";
    case K::Xor: return "xor(" + std::to_string(d.n) + ")";
    case K::Copy: return "copy(" + std::to_string(d.m) + ")";
    case K::Not: return "not";
    case K::Compose: return "compose" + arity();
    case K::Tensor: return "tensor" + arity();
  }
  return "?";
}

inline int zh_dot_walk(const ZhPtr& d, std::string& out, int& counter) {
  int id = counter++;
  out += "  n" + std::to_string(id) + " [label=\"" + zh_node_label(*d) + "\"];\n";
  if (d->left) {
    int l = zh_dot_walk(d->left, out, counter);
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(l) + ";\n";
  }
  if (d->right) {
    int r = zh_dot_walk(d->right, out, counter);
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(r) + ";\n";
  }
  return id;
}

}  // namespace detail

/// Renders the diagram tree in Graphviz dot syntax (children left-to-right;
/// for compose nodes the left child is applied after the right one).
inline std::string zh_to_dot(const ZhPtr& d) {
  if (!d) throw Error("cannot render a null diagram");
  std::string out = "digraph zh {\n  node [shape=box fontname=\"monospace\"];\n";
  int counter = 0;
  detail::zh_dot_walk(d, out, counter);
  out += "}\n";
  return out;
}

}  // namespace sop
