#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <jostspec/acceptance.hpp>
#include <jostspec/barrier.hpp>
#include <jostspec/bounds.hpp>
#include <jostspec/construction.hpp>
#include <jostspec/io.hpp>
#include <jostspec/jost.hpp>
#include <jostspec/spectra.hpp>
#include <jostspec/sums.hpp>

#ifndef JOSTSPEC_VERSION
#define JOSTSPEC_VERSION "dev"
#endif

namespace fs = std::filesystem;
using namespace jostspec;
using io::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// one run: parameters in, files out, a manifest tying them together
struct Run {
  std::string command;
  json params = json::object();
  std::vector<std::string> inputs;  // raw text of input files and descriptors
  fs::path out;
  std::vector<std::string> outputs;
  std::string run_id;

  void start() {
    std::string key = command + "\n" + params.dump();
    for (const auto& s : inputs) key += "\n" + s;
    run_id = io::hex64(io::fnv1a64(key));
    fs::create_directories(out);
  }

  json stamp(json j) const {
    j["run_id"] = run_id;
    j["manifest"] = command + ".manifest.json";
    return j;
  }

  fs::path file(const std::string& name) {
    outputs.push_back(name);
    return out / name;
  }

  void write_json(const std::string& name, const json& j) {
    std::ofstream f(file(name), std::ios::binary);
    f << j.dump(2) << "\n";
  }

  // SOURCE_DATE_EPOCH pins the timestamp for reproducible manifests
  static std::string timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(e, nullptr, 10));
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
  }

  void finish() {
    json m;
    m["command"] = command;
    m["parameters"] = params;
    m["tool_version"] = JOSTSPEC_VERSION;
    m["timestamp"] = timestamp();
    json h = json::array();
    for (const auto& s : inputs) h.push_back(io::hex64(io::fnv1a64(s)));
    m["input_hashes"] = h;
    m["run_id"] = run_id;
    m["outputs"] = outputs;
    std::ofstream f(out / (command + ".manifest.json"), std::ios::binary);
    f << m.dump(2) << "\n";
  }
};

cplx parse_z(const std::string& s) {
  double re, im;
  char comma;
  std::istringstream in(s);
  if (!(in >> re >> comma >> im) || comma != ',') throw UsageError("--z expects RE,IM");
  std::string rest;
  if (in >> rest) throw UsageError("--z expects RE,IM");
  return {re, im};
}

std::string fmtd(double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.10g", x);
  return b;
}

json spectrum_json(const std::vector<Eigenvalue>& eig) {
  json a = json::array();
  for (const auto& e : eig) a.push_back(io::to_json(e));
  return a;
}

void write_spectrum_csv(Run& run, const std::string& name, const std::vector<Eigenvalue>& eig) {
  std::ofstream f(run.file(name), std::ios::binary);
  f << "re_lambda,im_lambda,re_z,im_z,multiplicity,residual\n";
  f.precision(17);
  for (const auto& e : eig)
    f << e.lambda.real() << ',' << e.lambda.imag() << ',' << e.z.real() << ',' << e.z.imag() << ','
      << e.multiplicity << ',' << e.residual << '\n';
}

// spectrum of a descriptor: the barrier has its own enumerator
struct ComputedSpectrum {
  std::vector<Eigenvalue> eigenvalues;
  std::vector<UnresolvedRegion> unresolved;
  json extra = json::object();
};

ComputedSpectrum compute_spectrum(const io::Descriptor& d, double tol, std::optional<double> floor, unsigned threads) {
  ComputedSpectrum c;
  if (d.barrier) {
    BarrierSpectrumOptions o;
    o.threads = threads;
    o.floor = floor;
    auto sp = barrier_spectrum(*d.barrier, o);
    c.eigenvalues = sp.eigenvalues;
    c.extra["M_R"] = d.barrier->M_R();
    c.extra["last_j"] = sp.last_j;
    c.extra["floor"] = sp.floor;
    c.extra["contour_count"] = sp.contour_count;
    c.extra["enumerated_above"] = sp.enumerated_above;
    c.extra["below_floor"] = sp.below_floor;
    c.extra["complete"] = sp.complete;
    if (!sp.note.empty()) c.extra["note"] = sp.note;
    if (!sp.complete) c.unresolved.push_back({Box{0, 0, 0, sp.floor}, -1, "contour count does not match the family"});
    return c;
  }
  SpectrumOptions o;
  o.tol = tol;
  o.floor = floor;
  auto sp = find_spectrum(d.q, o);
  c.eigenvalues = sp.eigenvalues;
  c.unresolved = sp.unresolved;
  c.extra["enclosure_radius"] = sp.enclosure.r;
  c.extra["outer_count"] = sp.outer_count;
  c.extra["floor"] = sp.floor;
  return c;
}

// ---------------------------------------------------------------------------

int cmd_jost(Run& run, const std::string& pot, const std::string& zs, const std::string& method) {
  auto d = io::load_potential(pot);
  cplx z = parse_z(zs);
  run.inputs.push_back(d.source.dump());
  run.params = {{"potential", d.source}, {"z", io::cj(z)}, {"method", method}};
  run.start();
  json res = json::array();
  auto add = [&](JostMethod m) {
    switch (m) {
      case JostMethod::transfer_matrix:
        if (!d.q.is_step()) throw UsageError("the transfer matrix needs a step potential");
        res.push_back(io::to_json(jost_transfer_matrix(d.q, z)));
        break;
      case JostMethod::series: res.push_back(io::to_json(jost_series(d.q, z))); break;
      case JostMethod::ode: res.push_back(io::to_json(jost_ode(d.q, z))); break;
    }
  };
  if (method == "tm" || method == "all") {
    if (d.q.is_step() || method == "tm") add(JostMethod::transfer_matrix);
  }
  if (method == "series" || method == "all") add(JostMethod::series);
  if (method == "ode" || method == "all") add(JostMethod::ode);
  json out = method == "all" ? res : res[0];
  run.write_json("jost.json", run.stamp({{"result", out}}));
  std::cout << out.dump(2) << "\n";
  for (const auto& r : res)
    std::cerr << r["method"].get<std::string>() << ": e+(0,z) = " << fmtd(r["value"][0]) << " + "
              << fmtd(r["value"][1]) << "i (scale e^" << fmtd(r["log_scale"]) << "), error " << fmtd(r["error"]) << "\n";
  return 0;
}

int cmd_spectrum(Run& run, const std::string& pot, double tol, std::optional<double> floor, unsigned threads) {
  auto d = io::load_potential(pot);
  run.inputs.push_back(d.source.dump());
  run.params = {{"potential", d.source}, {"tol", tol}, {"floor", floor ? json(*floor) : json(nullptr)}};
  run.start();
  auto c = compute_spectrum(d, tol, floor, threads);
  json doc = run.stamp(json::object());
  doc["eigenvalues"] = spectrum_json(c.eigenvalues);
  json un = json::array();
  for (const auto& u : c.unresolved) un.push_back(io::to_json(u));
  doc["unresolved"] = un;
  doc["details"] = c.extra;
  run.write_json("spectrum.json", doc);
  write_spectrum_csv(run, "spectrum.csv", c.eigenvalues);
  std::cout << doc["eigenvalues"].dump() << "\n";
  std::cerr << c.eigenvalues.size() << " eigenvalues, " << c.unresolved.size() << " unresolved regions -> "
            << (run.out / "spectrum.json").string() << "\n";
  return 0;
}

int cmd_barrier(Run& run, double gamma, double R, std::optional<long> jmax, double tol, unsigned threads) {
  BarrierSpec b(gamma, R);
  long jm = jmax.value_or(b.M_R());
  if (jm < 0 || jm > j_max_cap) throw UsageError("--jmax must lie in [0, 1e7]");
  run.params = {{"gamma", gamma}, {"R", R}, {"jmax", jm}, {"tol", tol}};
  run.start();
  std::ofstream f(run.file("barrier.jsonl"), std::ios::binary);
  long eig = 0, in_spec = 0, fail = 0;
  const long chunk = 8192;
  for (long j0 = 1; j0 <= jm; j0 += chunk) {
    auto part = solve_range(b, j0, std::min(jm, j0 + chunk - 1), tol, threads);
    for (const auto& s : part) {
      auto line = io::to_json(s).dump();
      std::cout << line << "\n";
      f << line << "\n";
      eig += s.is_eigenvalue;
      in_spec += s.in_spectrum;
      fail += !s.error.empty();
    }
  }
  std::cout.flush();
  std::cerr << "gamma = " << fmtd(gamma) << ", R = " << fmtd(R) << ": M_R = " << b.M_R() << ", " << jm
            << " branches, " << eig << " eigenvalues, " << in_spec << " in the strip, " << fail << " failures\n";
  return 0;
}

int cmd_barrier_check(Run& run, double gamma, double R, std::optional<long> jmax, double tol, unsigned threads) {
  BarrierSpec b(gamma, R);
  run.params = {{"gamma", gamma}, {"R", R}, {"jmax", jmax ? json(*jmax) : json(nullptr)}, {"tol", tol}};
  run.start();
  auto e = enumerate_spectrum(b, jmax, tol, threads);
  long mr = b.M_R(), strip = 0, residual = 0, contraction = 0, sector = 0, unconverged = 0, in_spec = 0;
  for (const auto& s : e.solutions) {
    if (s.j > mr) continue;
    if (!s.converged) ++unconverged;
    if (!s.in_sector) ++sector;
    if (!(s.contraction < 1)) ++contraction;
    if (!s.in_spectrum) continue;
    ++in_spec;
    if (!(s.lambda.real() > 0 && s.lambda.imag() >= gamma / 2 && s.lambda.imag() <= gamma)) ++strip;
    if (!(s.residual_phi < 1e-10)) ++residual;
  }
  bool count_ok = in_spec >= std::min<long>(mr, static_cast<long>(e.solutions.size()));
  bool ok = count_ok && !strip && !residual && !contraction && !sector && !unconverged && e.failures.empty();
  json doc = run.stamp(json::object());
  doc["M_R"] = mr;
  doc["bigr"] = b.satisfies_bigr();
  doc["solved"] = e.solutions.size();
  doc["in_spectrum"] = in_spec;
  doc["violations"] = {{"strip", strip},       {"phi_residual", residual}, {"contraction", contraction},
                       {"sector", sector},     {"unconverged", unconverged},
                       {"failures", e.failures.size()}};
  doc["max_contraction"] = e.max_contraction();
  doc["passed"] = ok;
  run.write_json("barrier-check.json", doc);
  std::cout << doc.dump(2) << "\n";
  std::cerr << (ok ? "PASS" : "FAIL") << ": " << in_spec << " in-strip solutions for M_R = " << mr << "\n";
  return ok ? 0 : 1;
}

int cmd_sums(Run& run, const std::string& path, const std::string& kind, double eps, double alpha, double beta) {
  std::string text = io::read_file(path);
  SumSpec s;
  if (kind == "s") s = SumSpec::S(eps);
  else if (kind == "j") s = SumSpec::J();
  else s = SumSpec::gen(alpha, beta);
  s.validate();
  run.inputs.push_back(text);
  run.params = {{"spectrum", path}, {"kind", kind}, {"eps", eps}, {"alpha", alpha}, {"beta", beta}};
  run.start();
  auto sp = io::parse_spectrum(text);
  auto r = eval_sum(sp.eigenvalues, s, sp.unresolved);
  json out = io::to_json(r);
  run.write_json("sums.json", run.stamp({{"result", out}}));
  std::cout << out.dump(2) << "\n";
  std::cerr << sum_kind_name(s.kind) << " = " << fmtd(r.value) << " over " << r.n_terms << " terms"
            << (r.unresolved_flag ? " (spectrum has unresolved regions: lower estimate)" : "") << "\n";
  return 0;
}

int cmd_bounds(Run& run, const std::string& pot, const std::string& suite, double p, double eps,
               std::optional<double> support, unsigned threads) {
  auto d = io::load_potential(pot);
  run.inputs.push_back(d.source.dump());
  run.params = {{"potential", d.source}, {"suite", suite}, {"p", p}, {"eps", eps},
                {"support_radius", support ? json(*support) : json(nullptr)}};
  run.start();
  auto c = compute_spectrum(d, 1e-10, std::nullopt, threads);
  double J = eval_sum(c.eigenvalues, SumSpec::J()).value;
  std::vector<BoundReport> reps;
  if (suite == "upper" || suite == "all") {
    reps.push_back(bound_poly(d.q, p, J));
    double end = d.q.support_end();
    if (support || std::isfinite(end)) reps.push_back(bound_compact(d.q, support.value_or(std::max(end, 2.0)), J));
    if (d.q.l1_norm() > 0) {
      auto w = WeightPair::poly(p);
      reps.push_back(bound_ltgente(d.q, w, poly_delta(weighted_norm(d.q, w)), J));
    }
  }
  if (suite == "lower" || suite == "all") {
    if (d.barrier) {
      for (auto& r : lower_bounds_barrier(*d.barrier, eps, c.eigenvalues)) reps.push_back(r);
      for (auto& r : two_sided_jensen(*d.barrier, J)) reps.push_back(r);
    }
    if (!c.eigenvalues.empty()) {
      double S0 = eval_sum(c.eigenvalues, SumSpec::S(0)).value;
      reps.push_back(make_report("S0_at_least_J", BoundDirection::lower, S0 * (1 + sum_slack), J));
      reps.push_back(make_report("S0_at_most_2J", BoundDirection::upper, S0, 2 * J * (1 + sum_slack)));
    }
  }
  bool unresolved = !c.unresolved.empty();
  json arr = json::array();
  int failed = 0;
  for (auto& r : reps) {
    // an incomplete spectrum only certifies lower bounds on J
    if (unresolved && r.direction == BoundDirection::lower) {
      r.preconditions_met = false;
      r.note += r.note.empty() ? "spectrum unresolved" : "; spectrum unresolved";
    }
    failed += r.failed();
    arr.push_back(io::to_json(r));
  }
  json doc = run.stamp(json::object());
  doc["J"] = J;
  doc["eigenvalues"] = c.eigenvalues.size();
  doc["unresolved"] = unresolved;
  doc["bounds"] = arr;
  run.write_json("bounds.json", doc);
  std::cout << arr.dump(2) << "\n";
  for (const auto& r : reps)
    std::cerr << (r.failed() ? "FAIL " : r.preconditions_met ? "ok   " : "info ") << r.name << ": " << fmtd(r.lhs)
              << (r.direction == BoundDirection::upper ? " <= " : " >= ") << fmtd(r.rhs) << "\n";
  return failed ? 1 : 0;
}

int cmd_construct(Run& run, int stages, const std::string& profile, long series_to) {
  if (stages < 1) throw UsageError("--stages must be >= 1");
  run.params = {{"stages", stages}, {"profile", profile}, {"series_to", series_to}};
  run.start();
  std::ofstream csv(run.file("construct.csv"), std::ios::binary);
  csv.precision(17);
  csv << "n,gamma,R,M_R,X,center,accepted,worst_margin,contribution,partial\n";
  double partial = 0;
  auto stage_doc = [&](int n, double g, double R, double X, double center, json extra) {
    BarrierSpec b(g, R);
    bool big = b.satisfies_bigr();
    double contribution = big ? g * R * std::log(R) / (64 * std::numbers::pi) : 0.0;
    partial += contribution;
    json j = run.stamp(json::object());
    j["n"] = n;
    j["gamma"] = g;
    j["R"] = R;
    j["M_R"] = b.M_R();
    j["bigr"] = big;
    j["X"] = X;
    j["center"] = center;
    j["certified_contribution"] = contribution;
    j["certified_partial"] = partial;
    j.update(extra);
    char name[32];
    std::snprintf(name, sizeof name, "stage-%03d.json", n);
    run.write_json(name, j);
    csv << n << ',' << g << ',' << R << ',' << b.M_R() << ',' << X << ',' << center << ','
        << (j.contains("accepted") && j["accepted"].is_boolean() ? int(j["accepted"].get<bool>()) : -1) << ','
        << (j.contains("worst_margin") && j["worst_margin"].is_number() ? j["worst_margin"].get<double>() : NAN)
        << ',' << contribution << ',' << partial << '\n';
    std::cerr << "stage " << n << ": gamma = " << fmtd(g) << ", R = " << fmtd(R) << ", X = " << fmtd(X)
              << ", partial = " << fmtd(partial) << "\n";
  };
  int bad = 0;
  if (profile == "toy") {
    auto st = build_stages(Profile::toy(), stages);
    for (const auto& r : st.stages) {
      json extra = {{"tries", r.tries},
                    {"accepted", r.accepted},
                    {"worst_margin", io::finite_or_null(r.worst_margin)},
                    {"tried_X", r.tried_X},
                    {"new_roots", r.new_roots}};
      json tw = json::array(), dv = json::array();
      for (double m : r.tried_worst) tw.push_back(io::finite_or_null(m));
      for (double v : r.deviation) dv.push_back(v);
      extra["tried_worst_margin"] = tw;
      extra["shift_limit_deviation"] = dv;
      bad += !r.accepted;
      stage_doc(r.n, r.gamma, r.R, r.X, r.center, extra);
    }
    json summary = run.stamp(json::object());
    summary["supports_disjoint"] = supports_disjoint(st);
    summary["half_retention"] = half_retention(st);
    json tr = json::array();
    for (const auto& t : st.tracked)
      tr.push_back({{"source", io::cj(t.source)}, {"born", t.born}, {"current", io::cj(t.current)}, {"margin", t.margin}});
    summary["tracked"] = tr;
    run.write_json("construct.json", summary);
    bad += !supports_disjoint(st) || !half_retention(st);
  } else {
    // these barriers carry 1e4+ eigenvalues each, far past root-by-root
    // tracking; stages are laid end to end with a unit gap and left uncertified
    double end = 0;
    for (int n = 1; n <= stages; ++n) {
      auto p = stage_parameters(n);
      double X = end + 1.0;
      stage_doc(n, p.gamma, p.R, X, X + p.R, {{"accepted", nullptr}, {"margin", "not certified"}});
      end = X + 2 * p.R;
    }
    if (series_to > 0) {
      auto g = jensen_growth_report(series_to);
      std::ofstream gs(run.file("growth.csv"), std::ios::binary);
      gs.precision(17);
      gs << "n,gamma,R,contribution,partial,comparison_term,comparison_partial,log_ratio,l1_partial\n";
      for (const auto& r : g.rows)
        gs << r.n << ',' << r.gamma << ',' << r.R << ',' << r.contribution << ',' << r.partial << ','
           << r.comparison_term << ',' << r.comparison_partial << ',' << r.log_ratio << ',' << r.l1_partial << '\n';
      std::cerr << "growth series to n = " << series_to << ": partial " << fmtd(g.rows.back().partial)
                << (g.partial_increasing ? ", increasing" : ", NOT increasing") << "\n";
    }
  }
  return bad ? 1 : 0;
}

int cmd_verify_all(Run& run, bool quick, unsigned threads) {
  run.params = {{"quick", quick}};
  run.start();
  acceptance::Options o;
  o.quick = quick;
  o.threads = threads;
  json arr = json::array();
  int failed = 0;
  for (const auto& c : acceptance::all_criteria()) {
    auto r = c(o);
    std::cout << acceptance::format_line(r) << std::endl;
    failed += !r.passed;
    arr.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  json doc = run.stamp(json::object());
  doc["criteria"] = arr;
  doc["failed"] = failed;
  run.write_json("verify-all.json", doc);
  std::cerr << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schroedinger-Dirichlet operators on the half-line with complex potentials"};
  app.set_version_flag("--version", JOSTSPEC_VERSION);
  app.require_subcommand(1);

  const char* env_out = std::getenv("JOSTSPEC_OUT");
  std::string out = env_out && *env_out ? env_out : "jostspec-out";
  unsigned threads = default_threads();
  app.add_option("--out", out, "output directory (default $JOSTSPEC_OUT or ./jostspec-out)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  std::string pot, zs, method = "all", suite = "all", kind, spectrum_file, profile = "toy";
  double tol = 1e-10, gamma = 0, R = 0, eps = 0.5, alpha = 1, beta = 1, p = 0.5;
  std::optional<double> floor, support;
  std::optional<long> jmax;
  int stages = 3;
  long series_to = 1000000;
  bool quick = false;

  auto* jost = app.add_subcommand("jost", "evaluate e+(0,z)");
  jost->add_option("--potential", pot, "descriptor file or inline JSON")->required();
  jost->add_option("--z", zs, "RE,IM")->required()->allow_extra_args(false);
  jost->add_option("--method", method)->check(CLI::IsMember({"tm", "series", "ode", "all"}));

  auto* spec = app.add_subcommand("spectrum", "discrete spectrum of a potential");
  spec->add_option("--potential", pot)->required();
  spec->add_option("--tol", tol)->check(CLI::PositiveNumber);
  spec->add_option("--floor", floor)->check(CLI::PositiveNumber);

  double btol = 1e-12;
  auto* bar = app.add_subcommand("barrier", "stream the fixed-point family as JSON lines");
  auto* bchk = app.add_subcommand("barrier-check", "fixed-point invariants up to M_R");
  for (auto* s : {bar, bchk}) {
    s->add_option("--gamma", gamma)->required()->check(CLI::PositiveNumber);
    s->add_option("--R", R)->required()->check(CLI::PositiveNumber);
    s->add_option("--jmax", jmax);
    s->add_option("--tol", btol)->check(CLI::PositiveNumber);
  }

  auto* sums = app.add_subcommand("sums", "eigenvalue sums of a stored spectrum");
  sums->add_option("--spectrum", spectrum_file)->required()->check(CLI::ExistingFile);
  sums->add_option("--kind", kind)->required()->check(CLI::IsMember({"s", "j", "gen"}));
  auto* eo = sums->add_option("--eps", eps);
  auto* ao = sums->add_option("--alpha", alpha)->excludes(eo);
  auto* bo = sums->add_option("--beta", beta)->excludes(eo);

  auto* bnd = app.add_subcommand("bounds", "check the eigenvalue bounds on one potential");
  bnd->add_option("--potential", pot)->required();
  bnd->add_option("--suite", suite)->check(CLI::IsMember({"upper", "lower", "all"}));
  bnd->add_option("--p", p, "weight exponent of the polynomial bound")->check(CLI::PositiveNumber);
  bnd->add_option("--eps", eps, "eps of the barrier S_eps lower bound");
  bnd->add_option("--support-radius", support, "R of the compact-support bound");

  auto* con = app.add_subcommand("construct", "finite stages of the divergent construction");
  con->add_option("--stages", stages);
  con->add_option("--profile", profile)->check(CLI::IsMember({"paper", "toy"}));
  con->add_option("--series-to", series_to, "paper profile: growth table up to this n (0 to skip)");

  auto* ver = app.add_subcommand("verify-all", "run the acceptance criteria");
  ver->add_flag("--quick", quick, "reduced grid density");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (sums->parsed() && kind == "gen" && (ao->count() == 0 || bo->count() == 0)) {
    std::cerr << "usage: --kind gen needs --alpha and --beta\n";
    return 2;
  }

  Run run;
  run.out = out;
  auto dispatch = [&]() -> int {
    if (jost->parsed()) return cmd_jost(run, pot, zs, method);
    if (spec->parsed()) return cmd_spectrum(run, pot, tol, floor, threads);
    if (bar->parsed()) return cmd_barrier(run, gamma, R, jmax, btol, threads);
    if (bchk->parsed()) return cmd_barrier_check(run, gamma, R, jmax, btol, threads);
    if (sums->parsed()) return cmd_sums(run, spectrum_file, kind, eps, alpha, beta);
    if (bnd->parsed()) return cmd_bounds(run, pot, suite, p, eps, support, threads);
    if (con->parsed()) return cmd_construct(run, stages, profile, series_to);
    return cmd_verify_all(run, quick, threads);
  };
  run.command = app.get_subcommands().front()->get_name();
  try {
    int rc = dispatch();
    run.finish();
    return rc;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
