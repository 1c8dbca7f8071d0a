#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcinv/equivalence.hpp"
#include "bcinv/field_file.hpp"
#include "bcinv/json_io.hpp"
#include "bcinv/rayclass.hpp"
#include "bcinv/spectrum.hpp"
#include "bcinv/zeta.hpp"

namespace bcinv::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kOk = 0, kInputError = 1, kScopeError = 2, kInternalError = 3 };

using json::Json;

inline Json error_object(const std::exception& e, int code) {
  std::string type = "Error";
  Json extra = Json::object();
  if (auto* np = dynamic_cast<const NotPMaximal*>(&e)) {
    type = "NotPMaximal";
    extra["p"] = json::integer(np->prime());
  } else if (dynamic_cast<const UnsupportedField*>(&e)) type = "UnsupportedField";
  else if (dynamic_cast<const SaturationFailure*>(&e)) type = "SaturationFailure";
  else if (dynamic_cast<const InputError*>(&e)) type = "InputError";
  else if (dynamic_cast<const ArithmeticError*>(&e)) type = "ArithmeticError";
  else if (dynamic_cast<const InternalError*>(&e)) type = "InternalError";
  Json j = {{"type", type}, {"message", e.what()}, {"exit_code", code}};
  j.update(extra);
  return j;
}

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const ArithmeticError*>(&e)) return kInputError;
  if (dynamic_cast<const ScopeError*>(&e)) return kScopeError;
  return kInternalError;
}

/// Values of the global flags after parsing.
struct Globals {
  std::uint64_t bound = 0;
  bool bound_given = false;
  int levels = 2;
  int precision = 0;  // 0: BCINV_PRECISION or the default
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool human = false;

  std::uint64_t bound_or(std::uint64_t fallback) const { return bound_given ? bound : fallback; }
  int digits() const {
    if (precision == 0) return default_precision_digits();
    if (precision < 5 || precision > 10000) throw InputError("--precision must be between 5 and 10000");
    return precision;
  }
};

/// One command's output: the manifest plus either a result or an error.
class Report {
 public:
  Report(std::string command, const Globals& g, std::vector<std::string> argv) : g_(g), t0_(clock::now()) {
    manifest_ = {{"tool", "bcinv"}, {"version", kVersion}, {"command", std::move(command)}, {"seed", g.seed}};
    run_ = {{"argv", std::move(argv)}, {"jobs", g.jobs}, {"timing_us", Json::object()}};
  }

  Json& manifest() { return manifest_; }
  Json& result() { return result_; }
  std::vector<std::string>& human() { return human_; }

  /// Runs fn and records its wall time under run.timing_us[name].
  template <class Fn>
  auto timed(const std::string& name, Fn fn) {
    auto t = clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      run_["timing_us"][name] = micros(t);
    } else {
      auto v = fn();
      run_["timing_us"][name] = micros(t);
      return v;
    }
  }

  void fail(const std::exception& e, int code) {
    error_ = error_object(e, code);
    code_ = code;
  }
  int code() const { return code_; }

  void write(std::ostream& out, std::ostream& err) {
    run_["timing_us"]["total"] = micros(t0_);
    if (g_.human) {
      if (code_ != kOk) err << "error: " << error_["message"].get<std::string>() << "\n";
      for (const auto& line : human_) out << line << "\n";
      return;
    }
    Json doc = Json::object();
    manifest_["run"] = run_;
    doc["manifest"] = manifest_;
    if (code_ == kOk) doc["result"] = result_;
    else {
      if (!result_.is_null()) doc["partial_result"] = result_;
      doc["error"] = error_;
      err << "error: " << error_["message"].get<std::string>() << "\n";
    }
    out << doc.dump(2) << "\n";
  }

 private:
  using clock = std::chrono::steady_clock;
  static std::int64_t micros(clock::time_point since) {
    return std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - since).count();
  }

  const Globals& g_;
  clock::time_point t0_;
  Json manifest_, run_, result_, error_;
  std::vector<std::string> human_;
  int code_ = kOk;
};

namespace detail {

inline std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (auto p : v) s += (s.empty() ? "" : " ") + std::to_string(p);
  return s;
}

inline std::string pairs_text(const std::vector<std::pair<int, int>>& ps) {
  std::string s;
  for (auto [e, f] : ps) s += (s.empty() ? "" : " ") + std::string("(") + std::to_string(e) + "," + std::to_string(f) + ")";
  return s;
}

inline Integer parse_prime(const std::string& text) {
  Integer p;
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos || p.set_str(text, 10) != 0)
    throw InputError("'" + text + "' is not a positive integer");
  if (!is_prime(p)) throw InputError(text + " is not prime");
  return p;
}

inline std::string verdict_text(const EquivalenceVerdict& v) {
  std::string s = v.agree ? "agree to bound " + std::to_string(v.bound)
                          : "disagree at p = " + std::to_string(*v.witness) + " (" + v.detail + ")";
  s += std::string(" [") + to_string(v.mode) + "]";
  if (!v.excluded.empty()) s += "; excluded: " + join(v.excluded);
  return s;
}

/// Oracle chain where the oracle applies, otherwise the formula chain with
/// the reason recorded next to it.
inline Json report_chain(const NumberField& k, const PrimeIdeal& P, int levels, unsigned jobs) {
  if (k.degree <= 2) {
    try {
      return json::chain(chain(k, P, levels, ChainMode::oracle, {0, std::uint64_t(1) << 23, jobs}));
    } catch (const ScopeError& e) {
      Json j = json::chain(chain(k, P, levels, ChainMode::formula));
      j["oracle_error"] = error_object(e, kScopeError);
      return j;
    }
  }
  Json j = json::chain(chain(k, P, levels, ChainMode::formula));
  j["oracle_error"] = error_object(UnsupportedField("the oracle covers Q and quadratic fields only"), kScopeError);
  return j;
}

}  // namespace detail

/// Parses argv, runs one subcommand, writes its report. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime splitting, Dedekind zeta, ray-class index chains and spectrum strata of number fields", "bcinv"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Globals g;
  auto* bound_opt = app.add_option("--bound", g.bound, "Prime, norm or coefficient bound (command-specific default)");
  app.add_option("--levels", g.levels, "Highest ray level m")->check(CLI::Range(0, 12));
  app.add_option("--precision", g.precision, "Decimal digits for real values (default: BCINV_PRECISION or 30)");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1U, 256U));
  app.add_option("--seed", g.seed, "Seed for equal-degree factorization");
  auto* json_flag = app.add_flag("--json", "JSON report (default)");
  app.add_flag("--human", g.human, "Plain-text summary")->excludes(json_flag);

  std::string field_path, field_a, field_b, prime_text, s_value = "2", mode_text, stratum;
  std::uint64_t coeff_n = 100, enum_bound = 0, coeff_check = 0;
  std::size_t prime_index = 0;
  bool dump_table = false, list_components = false, show_closure = false, iso = false;

  auto* split = app.add_subcommand("split", "Split a rational prime");
  split->add_option("--field", field_path, "Field file")->required();
  split->add_option("--p", prime_text, "Rational prime")->required();

  auto* zeta = app.add_subcommand("zeta", "Truncated Euler product of the Dedekind zeta function");
  zeta->add_option("--field", field_path, "Field file")->required();
  zeta->add_option("--s", s_value, "Real s > 1, as a decimal string");

  auto* coeffs = app.add_subcommand("coeffs", "Ideal counts a_1..a_N");
  coeffs->add_option("--field", field_path, "Field file")->required();
  coeffs->add_option("--N", coeff_n, "Number of coefficients")->check(CLI::Range(std::uint64_t(1), std::uint64_t(100000000)));

  auto* equiv = app.add_subcommand("equiv", "Compare splitting numbers of two fields up to a bound");
  equiv->add_option("--field-a", field_a, "First field file")->required();
  equiv->add_option("--field-b", field_b, "Second field file")->required();
  mode_text = "g";
  equiv->add_option("--mode", mode_text, "g (splitting numbers) or full (splitting types)");
  equiv->add_flag("--dump-table", dump_table, "Include the per-prime table");
  equiv->add_flag("--isomorphism", iso, "Also decide isomorphism by a root search");
  equiv->add_option("--coefficients", coeff_check, "Also compare ideal counts a_n for n <= N");

  auto* invariant = app.add_subcommand("invariant", "Ray-class index chain and trace label of one prime");
  invariant->add_option("--field", field_path, "Field file")->required();
  invariant->add_option("--over-prime", prime_text, "Rational prime below the chosen prime ideal")->required();
  invariant->add_option("--prime-index", prime_index, "Which prime above p, in splitting order");
  std::string chain_mode = "oracle";
  invariant->add_option("--mode", chain_mode, "oracle or formula")->check(CLI::IsMember({"oracle", "formula"}));
  invariant->add_option("--enum-bound", enum_bound, "Ideal norm bound for the oracle (0 picks one and doubles)");

  auto* spectrum = app.add_subcommand("spectrum", "Strata of the truncated prime spectrum");
  spectrum->add_option("--field", field_path, "Field file")->required();
  spectrum->add_flag("--list-components", list_components, "List second-maximal components and labels");
  spectrum->add_option("--classify", stratum, "Stratum: all, none, {i,...} or ~{i,...}");
  spectrum->add_flag("--closure", show_closure, "With --classify, list the strata containing it");

  auto* report = app.add_subcommand("report", "Full report for one field");
  report->add_option("--field", field_path, "Field file")->required();
  report->add_option("--s", s_value, "Real s > 1 for the zeta section");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  g.bound_given = bound_opt->count() > 0;

  CLI::App* sub = app.get_subcommands().front();
  std::vector<std::string> args(argv + 1, argv + argc);
  Report rep(sub->get_name(), g, args);
  Json& man = rep.manifest();
  Json& res = rep.result();
  auto& human = rep.human();

  try {
    const int digits = g.digits();
    man["precision"] = digits;
    auto load = [&](const std::string& path) {
      return rep.timed("load", [&] { return load_field(path); });
    };

    if (sub == split) {
      man["inputs"] = {{"field", field_path}, {"p", prime_text}};
      const NumberField k = load(field_path);
      const Integer p = detail::parse_prime(prime_text);
      SplittingType st = rep.timed("split", [&] { return split_prime(k, p, g.seed); });
      res = json::splitting(st);
      human.push_back(k.label + ", p = " + p.get_str() + ": g = " + std::to_string(st.g) + ", (e,f) " + detail::pairs_text(st.pairs));
    } else if (sub == zeta) {
      const std::uint64_t B = g.bound_or(1000);
      man["inputs"] = {{"field", field_path}, {"s", s_value}};
      man["bounds"] = {{"B", B}};
      const NumberField k = load(field_path);
      auto z = rep.timed("euler_product", [&] { return euler_product(k, s_value, B, {digits, g.jobs}); });
      res = json::euler(z);
      res["field"] = k.label;
      human.push_back("zeta_" + k.label + "(" + s_value + ") ~ " + z.decimal() + "  (primes of norm <= " + std::to_string(B) +
                      ", " + std::to_string(digits) + " digits)");
    } else if (sub == coeffs) {
      man["inputs"] = {{"field", field_path}};
      man["bounds"] = {{"N", coeff_n}};
      const NumberField k = load(field_path);
      auto a = rep.timed("coefficients", [&] { return ideal_count_coefficients(k, coeff_n, g.jobs); });
      res = {{"field", k.label}, {"N", coeff_n}, {"a", json::integers(a)}};
      std::string line;
      for (const auto& v : a) line += (line.empty() ? "" : " ") + v.get_str();
      human.push_back(line);
    } else if (sub == equiv) {
      const std::uint64_t B = g.bound_or(1000);
      const CompareMode mode = parse_compare_mode(mode_text);
      man["inputs"] = {{"field_a", field_a}, {"field_b", field_b}, {"mode", mode_text}};
      man["bounds"] = {{"B", B}};
      if (coeff_check) man["bounds"]["N"] = coeff_check;
      const NumberField a = load(field_a), b = load(field_b);
      res["fields"] = {json::field(a), json::field(b)};
      auto pipe = rep.timed("pipeline", [&] { return invariant_pipeline(a, b, B, g.jobs, g.seed); });
      EquivalenceVerdict v = pipe.compare_verdict;
      if (mode == CompareMode::full_splitting_types)
        v = rep.timed("compare", [&] { return compare(fingerprint(a, B, g.jobs, g.seed), fingerprint(b, B, g.jobs, g.seed), mode); });
      res["verdict"] = json::verdict(v);
      res["pipeline"] = {{"result", pipe.verdict.agree ? "agree_to_bound" : "disagree"},
                         {"witness", pipe.verdict.witness ? Json(*pipe.verdict.witness) : Json(nullptr)},
                         {"consistent_with_compare", true}};
      human.push_back(a.label + " vs " + b.label + ": " + detail::verdict_text(v));
      if (dump_table) {
        Json t = Json::array();
        for (const auto& r : pipe.rows) t.push_back({{"p", r.p}, {"g_first", r.count_first}, {"g_second", r.count_second}});
        res["table"] = std::move(t);
        for (const auto& r : pipe.rows)
          human.push_back("  p = " + std::to_string(r.p) + ": " + std::to_string(r.count_first) + " " + std::to_string(r.count_second));
      }
      if (coeff_check) {
        auto zc = rep.timed("coefficients", [&] { return zeta_equal_up_to_partial(a, b, coeff_check, g.jobs); });
        res["coefficients"] = json::zeta_comparison(zc);
        human.push_back(zc.agree ? "  a_n agree for n <= " + std::to_string(coeff_check) + " (" + std::to_string(zc.compared) + " compared)"
                                 : "  a_n differ at n = " + std::to_string(zc.n));
      }
      if (iso) {
        auto ev = rep.timed("isomorphism", [&] { return isomorphism_test(a, b); });
        Json j = {{"verdict", to_string(ev.verdict)}, {"reason", ev.reason}};
        if (ev.root) j["norm_shift"] = ev.root->shift, j["norm_degree"] = ev.root->norm.degree();
        res["isomorphism"] = std::move(j);
        human.push_back(std::string("  ") + to_string(ev.verdict) + ": " + ev.reason);
      }
    } else if (sub == invariant) {
      man["inputs"] = {{"field", field_path}, {"over_prime", prime_text}, {"prime_index", prime_index}, {"mode", chain_mode}};
      man["bounds"] = {{"levels", g.levels}, {"enumeration_bound", enum_bound}};
      const NumberField k = load(field_path);
      const Integer p = detail::parse_prime(prime_text);
      SplittingType st = split_prime(k, p, g.seed);
      if (prime_index >= st.primes.size())
        throw InputError("prime index " + std::to_string(prime_index) + " but only " + std::to_string(st.primes.size()) + " primes above " + p.get_str());
      const PrimeIdeal& P = st.primes[prime_index];
      const ChainMode cm = chain_mode == "oracle" ? ChainMode::oracle : ChainMode::formula;
      RayClassChain c = rep.timed("chain", [&] { return chain(k, P, g.levels, cm, {enum_bound, std::uint64_t(1) << 23, g.jobs}); });
      TraceRangeDescriptor t = trace_range(P, c);
      res = json::chain(c);
      res["label"] = t.label;
      res["rational_prime"] = json::integer(t.p);
      std::string hs, rs;
      for (const auto& L : c.levels)
        if (L.h) hs += (hs.empty() ? "" : " ") + L.h->get_str();
      for (const auto& r : c.ratios) rs += (rs.empty() ? "" : " ") + r.get_str();
      human.push_back(P.to_string() + " f = " + std::to_string(P.f) + ": h = [" + hs + "], ratios = [" + rs + "], " + t.label +
                      (c.asserted ? ", asserted" : (c.growth_certified ? ", certified" : ", not certified")));
      for (const auto& d : c.discrepancies) human.push_back("  discrepancy: " + d);
    } else if (sub == spectrum) {
      const std::uint64_t B = g.bound_or(100);
      man["inputs"] = {{"field", field_path}, {"classify", stratum}, {"closure", show_closure}};
      man["bounds"] = {{"B", B}};
      const NumberField k = load(field_path);
      auto U = rep.timed("universe", [&] { return PrimeUniverse::up_to_norm(k, B); });
      res["universe"] = json::universe(*U);
      if (list_components || stratum.empty()) {
        Json cs = Json::array();
        for (const auto& c : components_of_I2(U)) {
          cs.push_back(json::component(c));
          human.push_back(std::to_string(c.index) + " " + c.prime.to_string() + " " + c.trace.label);
        }
        res["components"] = std::move(cs);
      }
      if (!stratum.empty()) {
        SpectrumPoint S = parse_stratum(U, stratum);
        res["point"] = json::point(S);
        human.push_back(S.to_string() + ": " + to_string(classify(S)));
        if (show_closure) {
          Json cl = Json::array();
          for (const auto& T : closure(S)) {
            cl.push_back(json::point(T));
            human.push_back("  contained in " + T.to_string());
          }
          res["closure"] = std::move(cl);
        }
      }
    } else if (sub == report) {
      const std::uint64_t B = g.bound_or(30);
      man["inputs"] = {{"field", field_path}, {"s", s_value}};
      man["bounds"] = {{"B", B}, {"levels", g.levels}};
      const NumberField k = load(field_path);
      res["field"] = json::field(k);
      bool complete = true;
      auto section = [&](const std::string& name, const std::function<Json()>& fn) {
        try {
          res[name] = rep.timed(name, fn);
        } catch (const Error& e) {
          const int code = exit_code_for(e);
          if (code == kInternalError) throw;
          res[name] = {{"error", error_object(e, code)}};
          complete = false;
          human.push_back(name + ": " + e.what());
        }
      };
      section("fingerprint", [&] {
        auto fp = fingerprint(k, B, g.jobs, g.seed);
        for (const auto& [p, e] : fp.entries) human.push_back("p = " + std::to_string(p) + ": g = " + std::to_string(e.g) + ", (e,f) " + detail::pairs_text(e.pairs));
        if (!fp.skipped.empty()) human.push_back("not p-maximal: " + detail::join(fp.skipped));
        return json::fingerprint(fp);
      });
      UniversePtr U;
      section("components", [&] {
        U = PrimeUniverse::up_to_norm(k, B);
        Json cs = Json::array();
        for (const auto& c : components_of_I2(U)) {
          cs.push_back(json::component(c));
          human.push_back("component " + c.prime.to_string() + ": " + c.trace.label);
        }
        return cs;
      });
      section("chains", [&] {
        if (!U) throw ScopeError("no prime universe, see the components section");
        Json cs = Json::array();
        for (const auto& P : U->primes) {
          Json c = detail::report_chain(k, P, g.levels, g.jobs);
          std::string line = "chain " + P.to_string() + ": h = " + c["h"].dump() + " ratios = " + c["ratios"].dump();
          if (c.contains("oracle_error")) line += " (formula; " + c["oracle_error"]["message"].get<std::string>() + ")";
          human.push_back(line);
          cs.push_back(std::move(c));
        }
        return cs;
      });
      section("zeta", [&] {
        auto z = euler_product(k, s_value, B, {digits, g.jobs});
        human.push_back("zeta(" + s_value + ") ~ " + z.decimal());
        return json::euler(z);
      });
      res["complete"] = complete;
    }
  } catch (const CLI::Error& e) {
    rep.fail(InputError(e.what()), kInputError);
  } catch (const Error& e) {
    rep.fail(e, exit_code_for(e));
  } catch (const std::exception& e) {
    rep.fail(e, kInternalError);
  }
  rep.write(out, err);
  return rep.code();
}

}  // namespace bcinv::cli
