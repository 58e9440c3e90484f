#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "negabeta/errors.hpp"
#include "negabeta/finiteness.hpp"
#include "negabeta/negarith.hpp"

namespace negabeta::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

IntPolynomial parse_poly(const std::string& flag, const std::string& text) {
  try {
    return IntPolynomial::parse(text);
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

FieldElement parse_num(const PisotBase& base, const std::string& text) {
  try {
    return FieldElement::parse(base, text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("--num: ") + e.what());
  }
}

// "~p/q" with p/q on the 2^-32 grid; exact rationals print without the marker.
std::string approx(const FieldElement& x) {
  if (x.is_rational()) return x.coeff(0).get_str();
  const Rational mid = fe_enclose(x, 64).midpoint();
  const Integer scale = Integer(1) << 32;
  Integer q = mid.get_num() * scale;
  mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), mid.get_den().get_mpz_t());
  Rational r(q, scale);
  r.canonicalize();
  return "~" + r.get_str();
}

std::string beta_approx(const PisotBase& base) { return approx(FieldElement::beta(base)); }

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

struct Options {
  std::string poly, num;
  std::vector<std::string> extra;
  int m = 0;
  std::string op = "sub";
  int oracle_depth = -1;
  long cap = kDefaultClosureCap;
  long box = 5;
  bool json = false;
};

int cmd_expand(const Options& o, std::ostream& out) {
  auto base = isolate_pisot_base(parse_poly("--poly", o.poly));
  NegativeBase nb(base);
  FieldElement x = parse_num(*base, o.num);
  FrLength fr = fr_length(nb, x);
  if (o.json) {
    json j;
    j["poly"] = base->minpoly().to_csv();
    j["beta"] = beta_approx(*base);
    j["num"] = x.to_string();
    j["expansion"] = fr.word.to_json();
    j["text"] = fr.word.to_text();
    j["fr"] = fr.finite() ? json(*fr.length) : json(nullptr);
    emit(out, j);
  } else {
    out << fr.word.to_text() << '\n';
  }
  return 0;
}

int cmd_orbit(const Options& o, std::ostream& out) {
  auto base = isolate_pisot_base(parse_poly("--poly", o.poly));
  NegativeBase nb(base);
  FieldElement x = parse_num(*base, o.num);
  if (!nb.in_domain(x)) throw OutOfDomain("orbit: " + x.to_string() + " is outside [l, l+1)");
  auto seq = digit_sequence(nb, x);
  const auto& states = seq.orbit.states;
  std::vector<long> digits = seq.word.preperiod;
  digits.insert(digits.end(), seq.word.period.begin(), seq.word.period.end());
  if (o.json) {
    json j;
    j["poly"] = base->minpoly().to_csv();
    json st = json::array();
    for (const auto& s : states) st.push_back(s.to_string());
    j["states"] = st;
    j["digits"] = digits;
    j["cycle_start"] = seq.orbit.cycle_start ? json(*seq.orbit.cycle_start) : json(nullptr);
    j["truncated"] = seq.word.truncated;
    emit(out, j);
    return 0;
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    out << "T^" << i << " = " << (states[i].is_zero_representation() ? "0" : states[i].to_string()) << "  "
        << approx(states[i]);
    if (i < digits.size()) out << "  digit " << digits[i];
    out << '\n';
  }
  if (seq.word.truncated)
    out << "step budget reached\n";
  else if (seq.orbit.cycle_start)
    out << "cycle from T^" << *seq.orbit.cycle_start << (seq.word.eventually_zero() ? " (reaches 0)" : "") << '\n';
  return 0;
}

int cmd_finiteness(const Options& o, std::ostream& out) {
  auto base = isolate_pisot_base(parse_poly("--poly", o.poly));
  std::vector<IntPolynomial> extra;
  for (const auto& e : o.extra) extra.push_back(parse_poly("--extra-poly", e));
  auto v = decide_minus_f(base, o.cap, extra);
  if (o.json) {
    json j = v.to_json();
    j["poly"] = base->minpoly().to_csv();
    j["beta"] = beta_approx(*base);
    emit(out, j);
  } else {
    out << "beta " << beta_approx(*base) << '\n' << v.to_text();
  }
  return 0;
}

int cmd_witness(const Options& o, std::ostream& out) {
  if (o.poly.empty() && o.m == 0) throw UsageError("witness: one of --poly or --m is required");
  if (!o.poly.empty()) {
    auto base = isolate_pisot_base(parse_poly("--poly", o.poly));
    auto p = srs_from_base(base);
    auto w = witness_closure(p, o.cap);
    auto dec = decide_d0(p, o.cap);
    if (o.json) {
      json j = dec.to_json();
      j["poly"] = base->minpoly().to_csv();
      j["saturated"] = w.saturated;
      json r = json::array();
      for (const auto& ri : p.r()) r.push_back(approx(ri));
      j["r"] = r;
      j["alpha"] = approx(p.alpha());
      emit(out, j);
      return 0;
    }
    out << "r =";
    for (const auto& ri : p.r()) out << ' ' << approx(ri);
    out << ", alpha = " << approx(p.alpha()) << '\n';
    out << "closure: " << w.states.size() << " states" << (w.saturated ? "" : " (cap reached)") << '\n';
    out << "verdict: " << to_string(dec.verdict) << '\n';
    if (!dec.cycle.empty()) {
      out << "cycle:";
      for (const auto& z : dec.cycle) out << ' ' << state_string(z);
      out << '\n';
    }
    return 0;
  }
  CubicSystem sys(o.m);
  auto w = frmax_sub_witness(sys);
  if (o.json) {
    emit(out, json{{"m", o.m}, {"x", w.x_digits}, {"y", w.y_digits}, {"fr", w.fr}});
  } else {
    out << "x = " << w.x_digits << " •\n"
        << "y = " << w.y_digits << " •\n"
        << "fr(x - y) = " << w.fr << '\n';
  }
  return 0;
}

int cmd_frmax(const Options& o, std::ostream& out) {
  CubicSystem sys(o.m);
  const FrOp op = o.op == "add" ? FrOp::Add : FrOp::Sub;
  auto r = frmax(sys, op);
  std::optional<long> oracle;
  if (o.oracle_depth >= 0) oracle = frmax_oracle(sys, o.oracle_depth, op);
  std::optional<FrmaxWitness> w;
  if (op == FrOp::Sub) w = frmax_sub_witness(sys);
  if (o.json) {
    json j;
    j["m"] = o.m;
    j["op"] = o.op;
    j["certified"] = r.certified;
    j["oracle"] = oracle ? json(*oracle) : json(nullptr);
    j["witness"] = w ? json{{"x", w->x_digits}, {"y", w->y_digits}, {"fr", w->fr}} : json(nullptr);
    emit(out, j);
    return 0;
  }
  out << "max fr(x " << (op == FrOp::Sub ? '-' : '+') << " y) for m = " << o.m << ": " << r.certified << '\n';
  out << "longest start state " << state_string(r.argmax) << " among " << r.start_states << '\n';
  if (w) out << "witness: x = " << w->x_digits << ", y = " << w->y_digits << ", fr = " << w->fr << '\n';
  if (oracle) out << "oracle (depth " << o.oracle_depth << "): " << *oracle << '\n';
  for (const auto& d : r.diagnostics) out << "diagnostic: " << d << '\n';
  return 0;
}

int cmd_regions(const Options& o, std::ostream& out) {
  VSet v = build_v(o.m);
  const std::string map = region_map(v, o.box);
  if (o.json) {
    json rows = json::array();
    std::istringstream is(map);
    for (std::string line; std::getline(is, line);) rows.push_back(line);
    emit(out, json{{"m", o.m}, {"box", o.box}, {"size", v.size()}, {"rows", rows}});
    return 0;
  }
  out << map;
  out << "# full, u {0,1}, n {-1,0}, o {1}, - {-1}, 0 {0}, x {-1,1}, . absent; rows z1 = " << o.box << " .. " << -o.box << ", columns z0 = "
      << -o.box << " .. " << o.box << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Negative-base numeration with exact arithmetic", "negabeta"};
  app.require_subcommand(1);
  Options o;

  auto* expand = app.add_subcommand("expand", "(-beta)-expansion of a number");
  auto* orbit = app.add_subcommand("orbit", "T-orbit of a point of [l, l+1)");
  auto* finiteness = app.add_subcommand("finiteness", "decide the negative finiteness property");
  auto* witness = app.add_subcommand("witness", "witness closure (--poly) or subtraction witness pair (--m)");
  auto* frmax_cmd = app.add_subcommand("frmax", "maximal fractional length of x + y or x - y");
  auto* regions = app.add_subcommand("regions", "textual map of the invariant set V");

  for (auto* sub : {expand, orbit}) {
    sub->add_option("--poly", o.poly, "coefficients, highest degree first")->required();
    sub->add_option("--num", o.num, "element c0 + c1*b + ...")->required();
  }
  finiteness->add_option("--poly", o.poly, "coefficients, highest degree first")->required();
  finiteness->add_option("--extra-poly", o.extra, "further polynomials vanishing at beta")->take_all();
  auto* wpoly = witness->add_option("--poly", o.poly, "coefficients, highest degree first");
  auto* wm = witness->add_option("--m", o.m, "cubic family parameter")->check(CLI::PositiveNumber);
  wpoly->excludes(wm);
  for (auto* sub : {finiteness, witness})
    sub->add_option("--cap", o.cap, "closure size cap")->check(CLI::PositiveNumber);
  for (auto* sub : {frmax_cmd, regions})
    sub->add_option("--m", o.m, "cubic family parameter")->required()->check(CLI::PositiveNumber);
  frmax_cmd->add_option("--op", o.op, "sub or add")->required()->check(CLI::IsMember({"sub", "add"}));
  frmax_cmd->add_option("--oracle-depth", o.oracle_depth, "exhaustive search depth")->check(CLI::Range(0, 40));
  regions->add_option("--box", o.box, "half-width of the map")->check(CLI::Range(0L, 200L));
  for (auto* sub : {expand, orbit, finiteness, witness, frmax_cmd, regions})
    sub->add_flag("--json", o.json, "single JSON object output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (expand->parsed()) return cmd_expand(o, out);
    if (orbit->parsed()) return cmd_orbit(o, out);
    if (finiteness->parsed()) return cmd_finiteness(o, out);
    if (witness->parsed()) return cmd_witness(o, out);
    if (frmax_cmd->parsed()) return cmd_frmax(o, out);
    if (regions->parsed()) return cmd_regions(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace negabeta::cli
