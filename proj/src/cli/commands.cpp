#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <sstream>

#include "hyperratio/cli.hpp"
#include "hyperratio/errors.hpp"
#include "hyperratio/exp_sections.hpp"
#include "hyperratio/hyper_series.hpp"
#include "hyperratio/ratio_kernel.hpp"
#include "hyperratio/serialize.hpp"
#include "hyperratio/turan_suite.hpp"
#include "options.hpp"

namespace hyperratio {
namespace {

using cli::Format;
using cli::plain_number;
using cli::real_at;
using cli::RunConfig;

constexpr unsigned kMaxEscalations = 4;

struct Io {
  std::ostream& out;
  std::ostream& err;
};

// Raw text of the per-command options; parsed after CLI11 is done so that
// every rational goes through parse_rational.
struct Args {
  std::string function;
  std::string a, b, c;
  std::string x = "0";
  std::string z;
  std::string n_text;
  unsigned long n = 1;
  unsigned long k = 0;
  std::string grid;
  std::string x_max;
  std::size_t points = 129;
  std::string target;
  std::size_t depth = kDefaultCertificateDepth;
  bool force = false;
  bool literal_remainder = false;
};

Rational scalar(const std::string& text, const char* name) {
  auto values = parse_rational_list(text);
  if (values.size() != 1)
    throw ParseError(std::string("--") + name + " needs exactly one value, got '" + text + "'");
  return values.front();
}

void print_value(Io io, Format format, const SeriesValue& v) {
  switch (format) {
    case Format::json:
      io.out << to_json(v).dump(2) << "\n";
      break;
    case Format::csv:
      io.out << "value,error_radius,terms_used\n"
             << v.value.to_decimal() << "," << radius_text(v.error_radius) << "," << v.terms_used
             << "\n";
      break;
    case Format::plain:
      io.out << "value        " << v.value.to_decimal() << "\n"
             << "error_radius " << radius_text(v.error_radius) << "\n"
             << "terms_used   " << v.terms_used << "\n";
      if (v.exact) io.out << "exact        " << to_string(*v.exact) << "\n";
      break;
  }
}

void print_conditions(Io io, Format format, const ConditionReport& report) {
  if (format == Format::json) return;
  const char* lead = format == Format::csv ? "# " : "";
  io.out << lead << "conditions " << report.theorem << ": "
         << (report.passed() ? "pass" : "FAIL") << "\n";
  for (const auto& clause : report.clauses) {
    io.out << lead << "  [" << (clause.passed ? "ok" : "FAIL") << "] " << clause.name << "   "
           << clause.detail << "\n";
  }
}

int cmd_eval(const Args& args, const RunConfig& config, Io io) {
  const Precision prec = config.precision();
  const unsigned bits = prec.working_bits;
  const Real x = real_at(parse_rational(args.x), bits);
  const std::string& fn = args.function;
  SeriesValue v;
  if (fn == "1f1") {
    v = eval_1f1(scalar(args.a, "a"), scalar(args.b, "b"), x, prec);
  } else if (fn == "pfq") {
    v = eval_pfq(HyperParams(parse_rational_list(args.a), parse_rational_list(args.b)), x, prec);
  } else if (fn == "exp") {
    v = exp_enclosure(x, prec);
  } else if (fn == "section") {
    v = section(args.n, x, prec);
  } else if (fn == "remainder") {
    v = remainder(args.n, x, prec);
  } else if (fn == "f") {
    v = ratio_f(args.n, x, prec);
  } else if (fn == "g") {
    v = ratio_g(args.n, x, prec);
  } else if (fn == "h") {
    v = h_kummer({scalar(args.a, "a"), scalar(args.b, "b"), scalar(args.c, "c")}, x, prec);
  } else if (fn == "hpq") {
    v = h_pfq({parse_rational_list(args.a), parse_rational_list(args.b), parse_rational_list(args.c)},
              x, prec);
  }
  print_value(io, config.format_or(Format::plain), v);
  return kExitVerified;
}

int cmd_sections(const Args& args, const RunConfig& config, Io io) {
  const Precision prec = config.precision();
  GridSpec spec = GridSpec::parse(args.grid.empty() ? "0:10:11" : args.grid);
  spec.validate();
  const auto grid = spec.build(prec.working_bits);
  const bool with_f = args.n >= 1;
  const Format format = config.format_or(Format::plain);
  const std::string f_name = "f_" + std::to_string(args.n);

  Json rows = Json::array();
  if (format == Format::plain) {
    io.out << "x S_" << args.n << " R_" << args.n << (with_f ? " " + f_name : "") << "\n";
  } else if (format == Format::csv) {
    io.out << "x,S,S_radius,R,R_radius" << (with_f ? ",f,f_radius" : "") << "\n";
  }
  for (const auto& x : grid) {
    const SeriesValue s = section(args.n, x, prec);
    const SeriesValue r = remainder(args.n, x, prec);
    std::optional<SeriesValue> f;
    if (with_f) f = ratio_f(args.n, x, prec);
    switch (format) {
      case Format::plain:
        io.out << plain_number(x) << " " << plain_number(s.value) << " " << plain_number(r.value);
        if (f) io.out << " " << plain_number(f->value);
        io.out << "\n";
        break;
      case Format::csv:
        io.out << x.to_decimal() << "," << s.value.to_decimal() << "," << radius_text(s.error_radius)
               << "," << r.value.to_decimal() << "," << radius_text(r.error_radius);
        if (f) io.out << "," << f->value.to_decimal() << "," << radius_text(f->error_radius);
        io.out << "\n";
        break;
      case Format::json: {
        Json row{{"x", x.to_decimal()}, {"S", to_json(s)}, {"R", to_json(r)}};
        if (f) row["f"] = to_json(*f);
        rows.push_back(row);
        break;
      }
    }
  }
  if (format == Format::json) io.out << Json{{"n", args.n}, {"rows", rows}}.dump(2) << "\n";
  return kExitVerified;
}

// Retries `eval` at doubled precision while it throws PrecisionError.
template <typename Fn>
auto with_escalation(const Precision& start, Fn eval) {
  Precision prec = start;
  for (unsigned step = 0;; ++step) {
    try {
      return eval(prec);
    } catch (const PrecisionError&) {
      if (step == kMaxEscalations) throw;
      prec = prec.escalated();
    }
  }
}

int cmd_theta(const Args& args, const RunConfig& config, Io io) {
  const auto range = cli::IndexRange::parse(args.n_text);
  if (range.first < 1) throw DomainError("theta(n) needs n >= 1");
  const Precision prec = config.precision();
  const auto form =
      args.literal_remainder ? RamanujanForm::literal_remainder : RamanujanForm::partial_sum;
  if (args.literal_remainder) {
    io.err << "warning: --literal-remainder uses R_{n-1}(n) in place of S_{n-1}(n); "
              "theta then leaves (1/3, 1/2) and the rational e^n bounds fail\n";
  }
  const Format format = config.format_or(Format::plain);
  Json rows = Json::array();
  bool all_in = true;
  if (format == Format::plain) io.out << "n theta error_radius in_bounds\n";
  if (format == Format::csv) io.out << "n,theta,error_radius,in_bounds\n";
  for (unsigned long n = range.first; n <= range.last; ++n) {
    ThetaResult t = with_escalation(prec, [&](const Precision& p) { return ramanujan_theta(n, p, form); });
    all_in = all_in && t.in_bounds;
    const char* flag = t.in_bounds ? "true" : "false";
    if (format == Format::plain) {
      io.out << n << " " << plain_number(t.theta.value) << " " << radius_text(t.theta.error_radius)
             << " " << flag << "\n";
    } else if (format == Format::csv) {
      io.out << n << "," << t.theta.value.to_decimal() << "," << radius_text(t.theta.error_radius)
             << "," << flag << "\n";
    } else {
      rows.push_back(to_json(t));
    }
  }
  if (format == Format::json) io.out << rows.dump(2) << "\n";
  return all_in ? kExitVerified : kExitViolation;
}

int cmd_ebounds(const Args& args, const RunConfig& config, Io io) {
  const auto range = cli::IndexRange::parse(args.n_text);
  if (range.first < 1) throw DomainError("e^n bounds need n >= 1");
  const Precision prec = config.precision();
  const auto form =
      args.literal_remainder ? RamanujanForm::literal_remainder : RamanujanForm::partial_sum;
  const Format format = config.format_or(Format::plain);
  Json rows = Json::array();
  bool all_ok = true;
  if (format == Format::plain) io.out << "n lower e^n upper verified\n";
  if (format == Format::csv) io.out << "n,lower,e_power,upper,lower_holds,upper_holds\n";
  for (unsigned long n = range.first; n <= range.last; ++n) {
    EPowerBounds b = with_escalation(prec, [&](const Precision& p) { return e_power_bounds(n, p, form); });
    all_ok = all_ok && b.verified();
    if (format == Format::plain) {
      io.out << n << " " << plain_number(b.lower.value) << " " << plain_number(b.e_power.value) << " "
             << plain_number(b.upper.value) << " " << (b.verified() ? "true" : "false") << "\n";
    } else if (format == Format::csv) {
      io.out << n << "," << b.lower.value.to_decimal() << "," << b.e_power.value.to_decimal() << ","
             << b.upper.value.to_decimal() << "," << (b.lower_holds ? "true" : "false") << ","
             << (b.upper_holds ? "true" : "false") << "\n";
    } else {
      rows.push_back(to_json(b));
    }
  }
  if (format == Format::json) io.out << rows.dump(2) << "\n";
  return all_ok ? kExitVerified : kExitViolation;
}

RatioTarget build_target(const Args& args) {
  const std::string& t = args.target;
  if (t == "f") return RatioTarget::exp_ratio_f(args.n);
  if (t == "g") return RatioTarget::exp_ratio_g(args.n);
  if (t == "h") return RatioTarget::kummer({scalar(args.a, "a"), scalar(args.b, "b"), scalar(args.c, "c")});
  return RatioTarget::pfq(
      {parse_rational_list(args.a), parse_rational_list(args.b), parse_rational_list(args.c)});
}

void report_violations(Io io, const MonotoneReport& report) {
  if (report.monotone == Verdict::violated) {
    io.err << "CERTIFIED VIOLATION: " << report.target << " decreases between x = "
           << report.grid[report.worst_location.first].to_decimal() << " and x = "
           << report.grid[report.worst_location.second].to_decimal() << "\n";
  }
  if (report.turan == Verdict::violated) {
    io.err << "CERTIFIED VIOLATION: " << report.target << " drops below "
           << to_string(report.turan_floor) << "\n";
  }
  if (report.below_ceiling == Verdict::violated) {
    io.err << "CERTIFIED VIOLATION: " << report.target << " reaches its ceiling "
           << to_string(*report.ceiling) << "\n";
  }
}

int cmd_verify(const Args& args, const RunConfig& config, Io io) {
  if (args.target == "f" || args.target == "g") {
    if (args.n < 1) throw DomainError(args.target + "_n needs n >= 1");
  }
  const RatioTarget target = build_target(args);
  const Format format = config.format_or(Format::json);
  const ConditionReport conditions = target.conditions();
  print_conditions(io, format, conditions);
  if (!conditions.passed() && !args.force) {
    if (format == Format::json) {
      io.out << Json{{"target", target.describe()}, {"conditions", to_json(conditions)}}.dump(2)
             << "\n";
    }
    io.err << "error: parameter hypotheses fail: " << conditions.failures()
           << " (use --force to run anyway)\n";
    return kExitBadInput;
  }

  const Precision prec = config.precision();
  GridSpec spec = default_grid(target);
  if (!args.grid.empty()) spec = GridSpec::parse(args.grid);
  if (!args.x_max.empty()) {
    spec.max = parse_rational(args.x_max);
    spec.points = args.points;
  }
  spec.validate();
  const auto grid = spec.build(prec.working_bits);
  const MonotoneReport report = analyze_grid(target, grid, prec);

  switch (format) {
    case Format::json: {
      Json out;
      out["conditions"] = to_json(conditions);
      out["forced"] = args.force && !conditions.passed();
      out["report"] = to_json(report);
      io.out << out.dump(2) << "\n";
      break;
    }
    case Format::csv:
      io.out << to_csv(report);
      break;
    case Format::plain:
      io.out << "target " << report.target << "\n"
             << "monotone " << to_string(report.monotone) << " (worst margin "
             << report.worst_margin.to_decimal(12, MPFR_RNDD) << ")\n"
             << "turan " << to_string(report.turan) << " (floor " << to_string(report.turan_floor)
             << ", min margin " << report.turan_min.to_decimal(12, MPFR_RNDD) << ")\n";
      if (report.ceiling) {
        io.out << "ceiling " << to_string(report.below_ceiling) << " (" << to_string(*report.ceiling)
               << ")\n";
      }
      if (report.beyond_theorem_domain) io.out << "note beyond stated theorem domain\n";
      io.out << "points " << report.grid.size() << ", escalations " << report.escalations << "\n";
      break;
  }

  report_violations(io, report);
  const Verdict verdicts[] = {report.monotone, report.turan, report.below_ceiling};
  for (Verdict v : verdicts)
    if (v == Verdict::violated) return kExitViolation;
  for (Verdict v : verdicts)
    if (v == Verdict::inconclusive) return kExitPrecision;
  return kExitVerified;
}

int cmd_certify(const Args& args, const RunConfig& config, Io io) {
  const auto a = parse_rational_list(args.a);
  const auto b = parse_rational_list(args.b);
  const auto c = parse_rational_list(args.c);
  const CoeffCertificate cert = certify_coeff_monotone(a, b, c, args.depth, {args.force});
  const Format format = config.format_or(Format::json);
  if (format == Format::plain) {
    print_conditions(io, format, cert.conditions);
    io.out << "coeff-ratio holds " << (cert.coeff_ratio.holds ? "true" : "false") << " strict "
           << (cert.coeff_ratio.strict ? "true" : "false") << " range [0, " << cert.coeff_ratio.hi
           << "]\n";
    if (cert.coeff_ratio.first_violation) {
      const auto& v = *cert.coeff_ratio.first_violation;
      io.out << "  first violation at n = " << v.index << ": " << to_string(v.lhs) << " < "
             << to_string(v.rhs) << "\n";
    }
    io.out << "w-ratio holds " << (cert.w_ratio.holds ? "true" : "false") << " direction "
           << to_string(cert.w_ratio.direction) << "\n";
  } else {
    io.out << to_json(cert).dump(2) << "\n";
  }
  return cert.coeff_ratio.holds ? kExitVerified : kExitViolation;
}

int cmd_kernel(const std::string& which, const Args& args, const RunConfig& config, Io io) {
  const Format format = config.format_or(Format::plain);
  auto emit = [&](const std::string& key, const Rational& value) {
    if (format == Format::json) {
      io.out << Json{{key, to_string(value)}}.dump(2) << "\n";
    } else {
      io.out << to_string(value) << "\n";
    }
  };
  if (which == "pochhammer") {
    emit("pochhammer", pochhammer(scalar(args.z, "z"), args.n));
  } else if (which == "coeff") {
    emit("coeff", coeff(HyperParams(parse_rational_list(args.a), parse_rational_list(args.b)), args.n));
  } else if (which == "term-ratio") {
    emit("term_ratio", term_ratio_exact(HyperParams(parse_rational_list(args.a), parse_rational_list(args.b)),
                                        parse_rational(args.x), args.n));
  } else if (which == "w") {
    emit("w", theorem2_w(parse_rational_list(args.b), parse_rational_list(args.c), args.n, args.k));
  } else if (which == "w-ratio") {
    emit("w_ratio",
         theorem2_w_ratio(parse_rational_list(args.b), parse_rational_list(args.c), args.n, args.k));
  } else if (which == "conditions") {
    const auto report = certify_conditions(parse_rational_list(args.a), parse_rational_list(args.b),
                                           parse_rational_list(args.c));
    if (format == Format::json) {
      io.out << to_json(report).dump(2) << "\n";
    } else {
      print_conditions(io, format, report);
    }
    return report.passed() ? kExitVerified : kExitViolation;
  }
  return kExitVerified;
}

void add_params(CLI::App* cmd, Args& args, bool with_c) {
  cmd->add_option("--a", args.a, "upper parameters, comma separated rationals");
  cmd->add_option("--b", args.b, "lower parameters, comma separated rationals");
  if (with_c) cmd->add_option("--c", args.c, "shifts of the lower parameters");
}

}  // namespace

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigorous evaluation and certification for ratios of hypergeometric functions",
               "hyperratio"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  Args args;
  app.add_option("--bits", config.precision_bits,
                 "working precision in bits (default 128, or HYPERRATIO_PRECISION_BITS)")
      ->check(CLI::Range(53u, 1u << 20));
  app.add_option("--rel-error", config.rel_error, "target relative error of series truncation");
  app.add_option("--format", config.format, "output format")
      ->check(CLI::IsMember({"plain", "json", "csv"}));

  auto* eval = app.add_subcommand("eval", "evaluate one function with an error radius");
  eval->add_option("function", args.function, "function to evaluate")
      ->required()
      ->check(CLI::IsMember({"1f1", "pfq", "exp", "section", "remainder", "f", "g", "h", "hpq"}));
  add_params(eval, args, true);
  eval->add_option("--n", args.n, "section index");
  eval->add_option("--x", args.x, "argument (rational)");

  auto* sections = app.add_subcommand("sections", "S_n, R_n and f_n on a grid");
  sections->add_option("--n", args.n, "section index")->required();
  sections->add_option("--grid", args.grid, "min:max:points[@log]");

  auto* theta = app.add_subcommand("theta", "Ramanujan theta(n) with the (1/3, 1/2) check");
  theta->add_option("--n", args.n_text, "index or range lo..hi")->required();
  theta->add_flag("--literal-remainder", args.literal_remainder,
                  "use the remainder R_{n-1}(n) instead of the partial sum");

  auto* ebounds = app.add_subcommand("ebounds", "rational lower and upper bounds on e^n");
  ebounds->add_option("--n", args.n_text, "index or range lo..hi")->required();
  ebounds->add_flag("--literal-remainder", args.literal_remainder,
                    "use the remainder R_{n-1}(n) instead of the partial sum");

  auto* verify = app.add_subcommand("verify", "grid check of monotonicity and the Turán floor");
  verify->add_option("--target", args.target, "f, g, h or hpq")
      ->required()
      ->check(CLI::IsMember({"f", "g", "h", "hpq"}));
  verify->add_option("--n", args.n, "index for f and g");
  add_params(verify, args, true);
  verify->add_option("--grid", args.grid, "min:max:points[@log]");
  verify->add_option("--x-max", args.x_max, "right end of the default log grid");
  verify->add_option("--points", args.points, "points of the default grid")->check(CLI::Range(2, 1000000));
  verify->add_flag("--force", args.force, "run even if the parameter hypotheses fail");

  auto* certify = app.add_subcommand("certify", "exact coefficient-ratio certificate");
  add_params(certify, args, true);
  certify->add_option("--N", args.depth, "last index checked")->check(CLI::Range(0, 100000));
  certify->add_flag("--force", args.force, "run even if the parameter hypotheses fail");

  auto* kernel = app.add_subcommand("kernel", "exact building blocks");
  kernel->require_subcommand(1);
  std::string kernel_cmd;
  auto add_kernel = [&](const char* name, const char* help) {
    auto* sub = kernel->add_subcommand(name, help);
    sub->callback([&kernel_cmd, name] { kernel_cmd = name; });
    return sub;
  };
  auto* k_poch = add_kernel("pochhammer", "rising factorial (z)_n");
  k_poch->add_option("--z", args.z)->required();
  k_poch->add_option("--n", args.n)->required();
  auto* k_coeff = add_kernel("coeff", "series coefficient of pFq");
  add_params(k_coeff, args, false);
  k_coeff->add_option("--n", args.n)->required();
  auto* k_ratio = add_kernel("term-ratio", "t_{n+1} / t_n at rational x");
  add_params(k_ratio, args, false);
  k_ratio->add_option("--x", args.x);
  k_ratio->add_option("--n", args.n)->required();
  const std::pair<const char*, const char*> w_kernels[] = {
      {"w", "w_{n,k} term (vector shifts)"},
      {"w-ratio", "w_{n,k+1} / w_{n,k} (vector shifts)"}};
  for (const auto& [name, description] : w_kernels) {
    auto* sub = add_kernel(name, description);
    sub->add_option("--b", args.b, "lower parameters, comma separated rationals")->required();
    sub->add_option("--c", args.c, "shifts of the lower parameters")->required();
    sub->add_option("--n", args.n, "total index n")->required();
    sub->add_option("--k", args.k, "split index k")->required();
  }
  auto* k_cond = add_kernel("conditions", "parameter hypotheses used by certify");
  add_params(k_cond, args, true);

  if (const char* env = std::getenv("HYPERRATIO_PRECISION_BITS"); env && *env) {
    const auto range = [&] {
      try {
        return cli::IndexRange::parse(env);
      } catch (const ParseError&) {
        return cli::IndexRange{0, 0};
      }
    }();
    if (range.first != range.last || range.first < 53 || range.first > (1u << 20)) {
      err << "error: HYPERRATIO_PRECISION_BITS must be an integer in [53, 1048576], got '" << env
          << "'\n";
      return kExitBadInput;
    }
    config.precision_bits = static_cast<unsigned>(range.first);
  }

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitVerified;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitVerified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  Io io{out, err};
  try {
    if (*eval) return cmd_eval(args, config, io);
    if (*sections) return cmd_sections(args, config, io);
    if (*theta) return cmd_theta(args, config, io);
    if (*ebounds) return cmd_ebounds(args, config, io);
    if (*verify) return cmd_verify(args, config, io);
    if (*certify) return cmd_certify(args, config, io);
    if (*kernel) return cmd_kernel(kernel_cmd, args, config, io);
  } catch (const PrecisionError& e) {
    err << "error: precision exhausted: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace hyperratio
