// Command line front end for the sum-over-paths engine.
//
// Inputs are either circuit files in the little gate DSL (see README) or
// term/diagram JSON; "-" reads stdin.  `sop <command> --help` lists options.

#include <cctype>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sop/sop.hpp"

namespace {

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw sop::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw sop::Error("cannot open '" + path + "' for writing");
  f << text;
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

/// Accepts a term as JSON or as a circuit file (which gets composed).
sop::SopTerm load_term(const std::string& path) {
  std::string text = read_all(path);
  if (looks_like_json(text)) return sop::term_from_json(sop::Json::parse(text));
  return sop::circuit_to_sop(sop::parse_circuit(text));
}

/// --strategy takes a file name or an inline JSON object.
sop::Strategy load_strategy(const std::string& spec) {
  if (spec.empty()) return sop::default_strategy();
  std::string text = looks_like_json(spec) ? spec : read_all(spec);
  return sop::strategy_from_json(sop::Json::parse(text));
}

std::string bits(std::size_t index, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width; ++i)
    if (index >> (width - 1 - i) & 1) s[i] = '1';
  return s;
}

std::string approx(const sop::CycloNumber& x) {
  std::complex<double> z = x.to_complex();
  std::ostringstream ss;
  ss.precision(6);
  ss << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return ss.str();
}

std::string term_output(const sop::SopTerm& t, bool as_json) {
  return as_json ? sop::term_to_json(t).dump(2) + "\n" : t.str() + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact sum-over-paths engine for quantum circuits and ZH diagrams"};
  app.require_subcommand(1);

  std::string input, second, output, strategy_spec, trace_path, dot_path;
  bool as_json = false;
  std::size_t oracle_cap = 10;
  std::optional<int> level;
  int k = 1;
  int rc = 0;

  auto add_common = [&](CLI::App* cmd, bool with_strategy) {
    cmd->add_option("input", input, "circuit file or term JSON ('-' for stdin)")->required();
    cmd->add_option("-o,--output", output, "write the result here instead of stdout");
    cmd->add_flag("--json", as_json, "emit the resulting term as JSON");
    if (with_strategy) cmd->add_option("--strategy", strategy_spec, "rewrite strategy (file or inline JSON)");
  };

  // ---- simplify ----
  auto* simplify = app.add_subcommand("simplify", "rewrite a term to an irreducible form");
  add_common(simplify, true);
  simplify->add_option("--trace", trace_path, "write the rewrite trace as JSON");
  simplify->callback([&] {
    sop::SopTerm t = load_term(input);
    auto rr = sop::reduce(t, load_strategy(strategy_spec));
    if (!trace_path.empty()) write_out(trace_path, sop::trace_to_json(rr.trace).dump(2) + "\n");
    if (rr.hit_step_limit)
      std::cerr << "warning: step limit reached after " << rr.trace.size()
                << " steps; result may still be reducible\n";
    write_out(output, term_output(rr.term, as_json));
  });

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "decide whether two circuits implement the same unitary");
  verify->add_option("circuit_a", input, "first circuit file")->required();
  verify->add_option("circuit_b", second, "second circuit file")->required();
  verify->add_option("--strategy", strategy_spec, "rewrite strategy (file or inline JSON)");
  verify->add_option("--oracle-cap", oracle_cap, "widest circuit the exact matrix oracle may handle")
      ->capture_default_str();
  verify->callback([&] {
    sop::Circuit a = sop::parse_circuit(read_all(input));
    sop::Circuit b = sop::parse_circuit(read_all(second));
    sop::VerifyOptions opt;
    opt.strategy = load_strategy(strategy_spec);
    opt.oracle_cap = oracle_cap;
    auto res = sop::verify_equivalence(a, b, opt);
    switch (res.status) {
      case sop::VerifyStatus::VerifiedByRewrite:
        if (res.global_phase && !res.global_phase->is_zero())
          std::cout << "equivalent up to global phase e^(2*i*pi*" << res.global_phase->str()
                    << ") (verified-by-rewrite)\n";
        else
          std::cout << "equivalent (verified-by-rewrite)\n";
        rc = 0;
        break;
      case sop::VerifyStatus::VerifiedByOracle:
        std::cout << "equivalent (verified-by-oracle)\n";
        rc = 0;
        break;
      case sop::VerifyStatus::Refuted: {
        const auto& w = *res.witness;
        std::cout << "refuted: amplitudes differ at <" << bits(w.row, w.qubits) << "| U |" << bits(w.col, w.qubits)
                  << ">\n  first:  " << w.lhs.str() << "  ~ " << approx(w.lhs) << "\n  second: " << w.rhs.str()
                  << "  ~ " << approx(w.rhs) << "\n";
        rc = 1;
        break;
      }
      case sop::VerifyStatus::Inconclusive:
        std::cout << "inconclusive: rewriting stalled and the circuit is too wide for the oracle\n";
        if (res.hit_step_limit) std::cout << "  (step limit was reached; try SOP_STEP_LIMIT or --strategy)\n";
        rc = 2;
        break;
    }
  });

  // ---- interp ----
  auto* interp_cmd = app.add_subcommand("interp", "print the exact matrix of a term or circuit");
  add_common(interp_cmd, false);
  interp_cmd->add_option("--level", level, "cyclotomic level to evaluate at (defaults to the smallest)");
  interp_cmd->callback([&] {
    sop::SopTerm t = load_term(input);
    write_out(output, sop::interp(t, level).str());
  });

  // ---- to-zh ----
  auto* tozh = app.add_subcommand("to-zh", "translate a term or circuit into a ZH diagram");
  add_common(tozh, false);
  tozh->add_option("--dot", dot_path, "also write the diagram tree in Graphviz dot syntax");
  tozh->callback([&] {
    sop::ZhPtr d = sop::sop_to_zh(load_term(input));
    if (!dot_path.empty()) write_out(dot_path, sop::zh_to_dot(d));
    write_out(output, sop::zh_to_json(d).dump(2) + "\n");
  });

  // ---- from-zh ----
  auto* fromzh = app.add_subcommand("from-zh", "translate a ZH diagram (JSON) into a term");
  add_common(fromzh, false);
  fromzh->callback([&] {
    sop::ZhPtr d = sop::zh_from_json(sop::Json::parse(read_all(input)));
    write_out(output, term_output(sop::zh_to_sop(d), as_json));
  });

  // ---- ascend ----
  auto* ascend = app.add_subcommand("ascend", "re-express a term one ring level lower, adding a last wire");
  add_common(ascend, false);
  ascend->add_option("-k,--level", k, "tower level the term currently lives in")->required();
  ascend->callback([&] {
    sop::SopTerm t = sop::ensure_primed(load_term(input));
    write_out(output, term_output(sop::ascend(t, k), as_json));
  });

  // ---- descend ----
  auto* descend = app.add_subcommand("descend", "inverse of ascend: consume the last wire");
  add_common(descend, false);
  descend->add_option("-k,--level", k, "tower level being re-entered")->required();
  descend->callback([&] {
    write_out(output, term_output(sop::descend(load_term(input), k), as_json));
  });

  // ---- stats ----
  auto* stats = app.add_subcommand("stats", "summarize a term or circuit");
  stats->add_option("input", input, "circuit file or term JSON ('-' for stdin)")->required();
  stats->callback([&] {
    std::string text = read_all(input);
    std::optional<std::size_t> gate_count;
    sop::SopTerm t;
    if (looks_like_json(text)) {
      t = sop::term_from_json(sop::Json::parse(text));
    } else {
      sop::Circuit c = sop::parse_circuit(text);
      gate_count = c.gates.size();
      t = sop::circuit_to_sop(c);
    }
    std::ostringstream ss;
    if (gate_count) ss << "gates:            " << *gate_count << "\n";
    ss << "wires:            " << t.in_arity() << " -> " << t.out_arity() << "\n";
    ss << "path variables:   " << t.vars.size() << "\n";
    ss << "phase monomials:  " << t.phase.size() << "\n";
    ss << "scalar exponent:  2^(" << t.halfpow << "/2)\n";
    ss << "fragment level:   " << sop::fragment_of(t) << "\n";
    ss << "irreducible:      " << (sop::is_irreducible(t, sop::default_strategy()) ? "yes" : "no") << "\n";
    ss << "zh spiders:       " << sop::zh_spider_count(sop::sop_to_zh(t)) << "\n";
    write_out(output, ss.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const sop::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
