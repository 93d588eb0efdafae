#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <list>
#include <sstream>
#include <string>
#include <vector>

#include "wittkit/io.hpp"
#include "wittkit/selftest.hpp"

using namespace wittkit;
using io::json;

namespace {

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kPrecision = 3, kSizeCap = 4, kDomain = 5 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage:
    case ErrorKind::Parse:
      return kUsage;
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::InsufficientPrecision:
      return kPrecision;
    case ErrorKind::SizeCap:
      return kSizeCap;
    default:
      return kDomain;
  }
}

struct Session {
  std::string ring = "F2";
  std::string field;
  int m = 4;
  std::string format = "text";
  int threads = 1;
  std::uint64_t seed = 1;
  i64 cap = i64{1} << 16;
  int samples = 50;

  RingPtr R() const { return io::parse_ring(field.empty() ? ring : field); }
  bool jsonl() const { return format == "jsonl"; }
};

Session S;
std::string command;

void emit(const json& result, const std::string& text) {
  if (S.jsonl()) {
    json rec{{"schema", io::kSchema}, {"cmd", command}, {"result", result}};
    std::cout << rec.dump() << "\n";
  } else {
    std::cout << text << "\n";
  }
}

template <class T>
std::string str(const T& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string qstr(const QMatrix& q) {
  if (q.e == 0) return str(q.A);
  return "p^" + std::to_string(-q.e) + " * " + str(q.A);
}

std::string weights_str(const std::vector<int>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

std::string display_str(const Display& D) { return "weights " + weights_str(D.L.weights()) + " phi " + str(D.phi); }

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(io::to_json(x));
  return a;
}

std::string rationals_str(const std::vector<Rational>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += i ? "," : "";
    s += v[i].denominator() == 1 ? std::to_string(v[i].numerator())
                                 : std::to_string(v[i].numerator()) + "/" + std::to_string(v[i].denominator());
  }
  return s + "]";
}

void emit_bool(const std::string& key, bool v) { emit(json{{key, v}}, key + ": " + (v ? "true" : "false")); }

// --- commands ------------------------------------------------------------------

using Args = std::vector<std::string>;

WittVector wv(const std::string& a) { return io::witt_from_json(S.R(), S.m, io::parse_json(a)); }
Display disp(const std::string& a) { return io::display_from_json(S.R(), S.m, io::parse_json(a)); }

int witt_cmd(const std::string& op, const Args& a) {
  auto need = [&](std::size_t n) { require(a.size() == n, ErrorKind::Usage, "witt " + op + " takes " + std::to_string(n) + " vector(s)"); };
  WittVector out;
  if (op == "add" || op == "mul") {
    need(2);
    out = op == "add" ? wv(a[0]) + wv(a[1]) : wv(a[0]) * wv(a[1]);
  } else if (op == "frob") {
    need(1);
    out = frobenius(wv(a[0]));
  } else if (op == "versch") {
    need(1);
    out = verschiebung(wv(a[0]));
  } else if (op == "ghost") {
    need(1);
    const auto g = wv(a[0]).ghost();
    json j = json::array();
    std::string t = "[";
    for (std::size_t i = 0; i < g.size(); ++i) {
      j.push_back(g[i]);
      t += i ? "," : "";
      if (g[i].size() == 1) {
        t += std::to_string(g[i][0]);
      } else {
        t += "(";
        for (std::size_t k = 0; k < g[i].size(); ++k) t += (k ? "," : "") + std::to_string(g[i][k]);
        t += ")";
      }
    }
    emit(j, t + "]");
    return kOk;
  } else if (op == "val") {
    need(1);
    const auto v = witt_val(wv(a[0]));
    emit(json{{"valuation", v.value}, {"exact", v.exact}}, v.exact ? std::to_string(v.value) : ">= " + std::to_string(v.value));
    return kOk;
  } else {
    fail(ErrorKind::Usage, "unknown witt operation");
  }
  emit(io::to_json(out), str(out));
  return kOk;
}

int frame_cmd(const std::string& op, const Args& a) {
  const auto R = S.R();
  auto fe = [&](const std::string& s) { return io::frame_from_json(R, S.m, io::parse_json(s)); };
  if (op == "check") {
    require(a.empty(), ErrorKind::Usage, "frame check takes no arguments");
    auto rep = frame_check(witt_frame_spec(R, S.m), S.samples, S.seed);
    json j = json::array();
    std::string t;
    for (const auto& x : rep.axioms) {
      j.push_back(json{{"axiom", x.axiom}, {"passed", x.passed}, {"samples", x.samples}, {"witness", x.witness}});
      if (!x.passed) t += "FAIL " + x.axiom + ": " + x.witness + "\n";
    }
    emit(json{{"frame", rep.frame}, {"axioms", j}, {"all_pass", rep.all_pass()}},
         t + (rep.all_pass() ? "all axioms pass" : "some axioms fail"));
    return rep.all_pass() ? kOk : kFalse;
  }
  if (op == "mul") {
    require(a.size() == 2, ErrorKind::Usage, "frame mul takes two elements");
    const auto x = frame_mul(fe(a[0]), fe(a[1]));
    emit(io::to_json(x), str(x));
  } else {
    require(a.size() == 1, ErrorKind::Usage, "frame " + op + " takes one element");
    const auto x = op == "sigma" ? frame_sigma(fe(a[0])) : frame_tau(fe(a[0]));
    emit(io::to_json(x), str(x));
  }
  return kOk;
}

std::string hpath;

int display_cmd(const std::string& op, const Args& a) {
  if (op == "validate") {
    require(a.size() == 1, ErrorKind::Usage, "display validate takes one display");
    const auto D = disp(a[0]);
    emit(json{{"valid", true},
              {"type", D.L.type()},
              {"depth", D.rank() ? D.L.depth() : 0},
              {"altitude", D.rank() ? D.L.altitude() : 0}},
         "valid display, type " + weights_str(D.L.type()));
  } else if (op == "tensor") {
    require(a.size() == 2, ErrorKind::Usage, "display tensor takes two displays");
    const auto D = display_tensor(disp(a[0]), disp(a[1]));
    emit(io::to_json(D), display_str(D));
  } else if (op == "dual") {
    require(a.size() == 1, ErrorKind::Usage, "display dual takes one display");
    const auto D = display_dual(disp(a[0]));
    emit(io::to_json(D), display_str(D));
  } else if (op == "morphcheck") {
    require(a.size() == 2 && !hpath.empty(), ErrorKind::Usage, "display morphcheck --hom <matrix> <D> <D'>");
    const auto D = disp(a[0]), Dp = disp(a[1]);
    GradedMorphism psi{D.L, Dp.L, io::fmatrix_from_json(S.R(), S.m, io::parse_json(hpath))};
    const auto deg = morph_check(psi);
    if (!deg.ok) fail(ErrorKind::DegreeViolation, "entry (" + std::to_string(deg.row) + "," + std::to_string(deg.col) + ") has the wrong degree");
    emit_bool("morphism", display_morphism_check(psi, D, Dp));
  } else {
    fail(ErrorKind::Usage, "unknown display operation");
  }
  return kOk;
}

int zink_cmd(const std::string& op, const Args& a) {
  require(a.size() == 1, ErrorKind::Usage, "zink " + op + " takes one argument");
  if (op == "to-display") {
    const auto j = io::parse_json(a[0]);
    require(j.contains("weights") && j.contains("F0") && j.contains("F1"), ErrorKind::Parse, "Zink display needs weights, F0, F1");
    const auto R = S.R();
    ZinkDisplay Z{GradedModule(R, S.m, io::weights_from_json(j["weights"])), io::wmatrix_from_json(R, S.m, j["F0"]),
                  io::wmatrix_from_json(R, S.m, j["F1"])};
    const auto D = zink_to_display(Z);
    emit(io::to_json(D), display_str(D));
    return kOk;
  }
  const auto Z = zink_from_display(disp(a[0]));
  if (op == "from-display") {
    json w = json::array();
    for (int x : Z.L.weights()) w.push_back(x);
    emit(json{{"weights", w}, {"F0", io::to_json(Z.F0)}, {"F1", io::to_json(Z.F1)}}, "F0 " + str(Z.F0) + " F1 " + str(Z.F1));
  } else if (op == "vsharp") {
    const auto V = v_sharp(Z);
    std::ostringstream red;
    red << "[";
    for (int i = 0; i < V.reduction.rows(); ++i) {
      red << (i ? "," : "") << "[";
      for (int k = 0; k < V.reduction.cols(); ++k) red << (k ? "," : "") << V.reduction(i, k);
      red << "]";
    }
    red << "]";
    json jr = json::array();
    for (int i = 0; i < V.reduction.rows(); ++i) {
      json row = json::array();
      for (int k = 0; k < V.reduction.cols(); ++k) row.push_back(io::to_json(V.reduction(i, k)));
      jr.push_back(row);
    }
    emit(json{{"matrix", io::to_json(V.matrix)}, {"reduction", jr}}, "V# " + str(V.matrix) + " mod (I_R + p) " + red.str());
  } else if (op == "nilpotent") {
    const auto n = zink_is_nilpotent(Z);
    emit(json{{"nilpotent", n.nilpotent}, {"exponent", n.exponent}},
         n.nilpotent ? "nilpotent, exponent " + std::to_string(n.exponent)
                     : "not nilpotent (checked up to " + std::to_string(n.exponent) + ")");
  } else {
    fail(ErrorKind::Usage, "unknown zink operation");
  }
  return kOk;
}

std::string gpath;

int iso_cmd(const std::string& op, const Args& a) {
  if (op == "of-display") {
    require(a.size() == 1, ErrorKind::Usage, "iso of-display takes one display");
    const auto I = isodisplay_of(disp(a[0]));
    emit(json{{"phi", io::to_json(I.phi)}}, "phi = " + qstr(I.phi));
  } else if (op == "slopes") {
    require(a.size() == 1, ErrorKind::Usage, "iso slopes takes one display or scaled matrix");
    const auto j = io::parse_json(a[0]);
    const auto R = S.R();
    const Isodisplay I = j.is_object() && j.contains("weights") ? isodisplay_of(io::display_from_json(R, S.m, j))
                                                                 : Isodisplay{R, io::qmatrix_from_json(R, S.m, j)};
    const auto s = newton_slopes(I);
    emit(json{{"slopes", rationals(s)}}, rationals_str(s));
  } else if (op == "qisog-check") {
    require(a.size() == 2 && !gpath.empty(), ErrorKind::Usage, "iso qisog-check --g <matrix> <D> <D'>");
    const auto D = disp(a[0]), Dp = disp(a[1]);
    const auto g = io::qmatrix_from_json(S.R(), S.m, io::parse_json(gpath));
    const bool q = quasi_isogeny_check(g, D, Dp);
    const bool i = q && is_isogeny(g, D, Dp);
    emit(json{{"quasi_isogeny", q}, {"isogeny", i}},
         std::string("quasi-isogeny: ") + (q ? "true" : "false") + ", isogeny: " + (i ? "true" : "false"));
  } else if (op == "smith") {
    require(a.size() == 1, ErrorKind::Usage, "iso smith takes one scaled matrix");
    const auto v = smith_valuations(io::qmatrix_from_json(S.R(), S.m, io::parse_json(a[0])));
    emit(json{{"valuations", v}}, weights_str(v));
  } else {
    fail(ErrorKind::Usage, "unknown iso operation");
  }
  return kOk;
}

std::string mu_str = "0,1";

Cocharacter mu() { return cocharacter(io::int_list(mu_str)); }

int dg_cmd(const std::string& op, const Args& a) {
  const auto R = S.R();
  const auto I = mu();
  const int n = static_cast<int>(I.size());
  auto fm = [&](const std::string& s) { return io::fmatrix_from_json(R, S.m, io::parse_json(s)); };
  auto wm = [&](const std::string& s) { return io::wmatrix_from_json(R, S.m, io::parse_json(s)); };
  if (op == "member") {
    require(a.size() == 1, ErrorKind::Usage, "dg member takes one matrix");
    const auto res = dg_membership(fm(a[0]), I);
    emit(json{{"member", res.ok}, {"reason", res.reason}}, res.ok ? "member: true" : "member: false (" + res.reason + ")");
  } else if (op == "action") {
    require(a.size() == 2, ErrorKind::Usage, "dg action takes U and h");
    const auto h = fm(a[1]);
    dg_require(h, I);
    const auto U = dg_action(wm(a[0]), h);
    emit(io::to_json(U), str(U));
  } else if (op == "enumerate") {
    require(a.empty(), ErrorKind::Usage, "dg enumerate takes no arguments");
    const auto members = dg_enumerate(R, S.m, I, S.cap);
    if (S.jsonl()) {
      for (const auto& h : members) emit(json{{"h", io::to_json(h)}}, "");
    }
    emit(json{{"count", members.size()}}, "members: " + std::to_string(members.size()));
  } else if (op == "homset") {
    require(a.size() == 2, ErrorKind::Usage, "dg homset takes U and U'");
    const auto members = dg_enumerate(R, S.m, I, S.cap);
    const auto homs = hom_set(wm(a[0]), wm(a[1]), members);
    if (S.jsonl())
      for (const auto& h : homs) emit(json{{"h", io::to_json(h)}}, "");
    else
      for (const auto& h : homs) std::cout << io::to_json(h).dump() << "\n";
    emit(json{{"count", homs.size()}}, "homomorphisms: " + std::to_string(homs.size()));
  } else if (op == "orbits") {
    require(a.empty(), ErrorKind::Usage, "dg orbits takes no arguments");
    const auto members = dg_enumerate(R, S.m, I, S.cap);
    const auto Us = gl_enumerate(R, S.m, n, S.cap);
    const auto part = dg_orbits(Us, members, S.threads);
    emit(json{{"gl_size", Us.size()}, {"orbits", part.count}},
         "GL_" + std::to_string(n) + ": " + std::to_string(Us.size()) + " elements, " + std::to_string(part.count) + " orbits");
  } else {
    fail(ErrorKind::Usage, "unknown dg operation");
  }
  return kOk;
}

std::string bpath, g2path;
int val_window = 0;

int rz_cmd(const std::string& op, const Args& a) {
  require(a.empty(), ErrorKind::Usage, "rz takes its inputs as options");
  require(!bpath.empty(), ErrorKind::Usage, "rz needs --b");
  const auto R = S.R();
  const auto F = validate_framing(mu(), io::qmatrix_from_json(R, S.m, io::parse_json(bpath)));
  auto gmat = [&](const std::string& s) {
    require(!s.empty(), ErrorKind::Usage, "rz " + op + " needs --g");
    return io::qmatrix_from_json(R, S.m, io::parse_json(s));
  };
  if (op == "validate") {
    emit(json{{"u", io::to_json(F.u)}, {"elementary_divisors", F.elementary_divisors}},
         "framing ok, u = " + str(F.u) + ", elementary divisors " + weights_str(F.elementary_divisors));
  } else if (op == "member") {
    const auto pt = rz_membership(F, gmat(gpath));
    if (pt)
      emit(json{{"member", true}, {"U", io::to_json(pt->U)}}, "member: true, U = " + str(pt->U));
    else
      emit(json{{"member", false}}, "member: false");
  } else if (op == "orbit") {
    emit_bool("same_orbit", rz_same_orbit(F, gmat(gpath), gmat(g2path)));
  } else if (op == "enumerate") {
    const auto res = rz_enumerate(F, val_window, S.threads, S.cap);
    for (std::size_t i = 0; i < res.points.size(); ++i) {
      const auto& pt = res.points[i];
      if (S.jsonl())
        emit(json{{"U", io::to_json(pt.U)}, {"g", io::to_json(pt.g)}, {"orbit", res.orbit[i]}}, "");
      else
        std::cout << "orbit " << res.orbit[i] << ": g = " << qstr(pt.g) << ", U = " << pt.U << "\n";
    }
    emit(json{{"points", res.points.size()}, {"orbits", res.orbits}, {"scanned", res.scanned}, {"undecided", res.undecided}},
         std::to_string(res.points.size()) + " points, " + std::to_string(res.orbits) + " orbits, " +
             std::to_string(res.scanned) + " candidates, " + std::to_string(res.undecided) + " undecided");
  } else {
    fail(ErrorKind::Usage, "unknown rz operation");
  }
  return kOk;
}

int el_cmd(const std::string& op, const Args& a) {
  const auto R = S.R();
  require(!a.empty(), ErrorKind::Usage, "el needs a datum");
  const auto parsed = io::el_from_json(R, S.m, io::parse_json(a[0]));
  const auto& d = parsed.datum;
  if (op == "validate") {
    require(a.size() == 1, ErrorKind::Usage, "el validate takes one datum");
    const auto r0 = lambda0_ranks(d);
    emit(json{{"valid", true}, {"lambda0_ranks", r0}, {"weights", d.weights}}, "valid datum, rk Lambda0(j) = " + weights_str(r0));
  } else if (op == "check") {
    require(a.size() == 2, ErrorKind::Usage, "el check takes a datum and a display");
    const auto D = disp(a[1]);
    const auto lie = lie_ranks(D, d.action, d.a);
    const bool ok = determinant_condition(D, d.action, d);
    emit(json{{"determinant_condition", ok}, {"lie_ranks", lie}, {"lambda0_ranks", lambda0_ranks(d)}},
         std::string("determinant condition: ") + (ok ? "true" : "false") + ", rk L(j) = " + weights_str(lie));
  } else if (op == "banal") {
    require(a.size() == 1 && parsed.regular, ErrorKind::Usage, "el banal takes a datum without explicit action");
    std::mt19937_64 rng(S.seed);
    const auto D = el_banal_display(*parsed.regular, el_random_group_element(*parsed.regular, rng));
    const bool ok = determinant_condition(D, d.action, d);
    emit(json{{"display", io::to_json(D)}, {"determinant_condition", ok}},
         display_str(D) + "\ndeterminant condition: " + (ok ? "true" : "false"));
  } else {
    fail(ErrorKind::Usage, "unknown el operation");
  }
  return kOk;
}

std::string only;
bool seed_given = false;

int selftest_cmd(const std::string&, const Args& a) {
  require(a.empty(), ErrorKind::Usage, "selftest takes no arguments");
  selftest::Options opt;
  if (seed_given) opt.seed = S.seed;
  opt.threads = std::max(1, S.threads);
  std::set<int> ids;
  for (int i : io::int_list(only)) ids.insert(i);
  int failed = 0;
  selftest::run(opt, ids, [&](const selftest::CriterionResult& r) {
    if (!r.pass) ++failed;
    emit(json{{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}},
         "criterion " + std::to_string(r.id) + " " + (r.pass ? "PASS" : "FAIL") + "  " + r.name + ": " + r.detail);
  });
  return failed ? kFalse : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wittkit: truncated Witt vectors, displays and their moduli"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--ring", S.ring, "ring: Z4, Z/8, F2, F4, F2[e], an inline config or @file");
  app.add_option("--field", S.field, "base field (alias of --ring)");
  app.add_option("--m", S.m, "truncation length")->check(CLI::Range(2, 64));
  app.add_option("--format", S.format, "output format")->check(CLI::IsMember({"text", "jsonl"}));
  app.add_option("--threads", S.threads, "worker threads for enumerations")->check(CLI::Range(1, 256));
  auto* seed_opt = app.add_option("--seed", S.seed, "seed for sampled runs");
  app.add_option("--cap", S.cap, "size cap for enumerations")->check(CLI::PositiveNumber);
  app.add_option("--samples", S.samples, "samples per property")->check(CLI::PositiveNumber);

  std::function<int()> action;
  std::list<Args> storage;
  using Handler = int (*)(const std::string&, const Args&);

  auto group = [&](const std::string& name, const std::string& desc, std::vector<std::string> ops, Handler h) {
    auto* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    for (const auto& op : ops) {
      auto* leaf = g->add_subcommand(op);
      // scalar positionals: CLI11 would split a vector option on "[a,b]"
      storage.emplace_back(3);
      Args* slots = &storage.back();
      leaf->add_option("first", (*slots)[0], "input: JSON literal or @file");
      leaf->add_option("second", (*slots)[1], "input: JSON literal or @file");
      leaf->add_option("third", (*slots)[2], "input: JSON literal or @file");
      leaf->callback([&action, h, op, slots, name, leaf] {
        command = name + " " + op;
        Args args;
        for (const char* k : {"first", "second", "third"})
          if (leaf->get_option(k)->count()) args.push_back((*slots)[args.size()]);
        action = [h, op, args] { return h(op, args); };
      });
    }
    return g;
  };

  group("witt", "Witt vector arithmetic", {"add", "mul", "frob", "versch", "ghost", "val"}, witt_cmd);
  group("frame", "the Witt frame", {"mul", "sigma", "tau", "check"}, frame_cmd);
  auto* d = group("display", "displays", {"validate", "tensor", "dual", "morphcheck"}, display_cmd);
  d->add_option("--hom", hpath, "morphism as a matrix of frame elements");
  group("zink", "Zink displays", {"from-display", "to-display", "vsharp", "nilpotent"}, zink_cmd);
  auto* i = group("iso", "isodisplays", {"of-display", "slopes", "qisog-check", "smith"}, iso_cmd);
  i->add_option("--g", gpath, "quasi-isogeny {\"pexp\": e, \"matrix\": ...}");
  auto* g = group("dg", "the display group", {"member", "action", "enumerate", "homset", "orbits"}, dg_cmd);
  g->add_option("--mu", mu_str, "cocharacter weights, comma separated");
  auto* r = group("rz", "framed points", {"validate", "member", "orbit", "enumerate"}, rz_cmd);
  r->add_option("--mu", mu_str, "cocharacter weights, comma separated");
  r->add_option("--b", bpath, "framing element b");
  r->add_option("--g", gpath, "g as {\"pexp\": e, \"matrix\": ...}");
  r->add_option("--g2", g2path, "second g for the orbit test");
  r->add_option("--val-window", val_window, "p-adic digit window")->check(CLI::Range(0, 8));
  group("el", "EL data", {"validate", "check", "banal"}, el_cmd);
  auto* st = app.add_subcommand("selftest", "run the acceptance suite");
  st->add_option("--only", only, "criteria to run, comma separated");
  st->callback([&] {
    command = "selftest";
    action = [] { return selftest_cmd("", {}); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  seed_given = seed_opt->count() > 0;
  try {
    return action ? action() : kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kDomain;
  }
}
