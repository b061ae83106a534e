#include "glab/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "glab/secant_lab.hpp"

namespace glab::cli {
namespace {

using nlohmann::json;

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t out = 1;
  for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::string ratio(std::size_t num, std::size_t den) {
  if (den == 0) return "undefined";
  return Scalar(mpq_class(static_cast<unsigned long>(num), static_cast<unsigned long>(den)), Field::rationals())
      .to_string();
}

json config_echo(const RunConfig& c) {
  json j = {{"command", c.command},
            {"field", c.field.name()},
            {"seed", c.seed},
            {"jet_trials", c.jet_trials},
            {"unsafe_size", c.unsafe_size}};
  j["trials"] = c.trials ? json(*c.trials) : json("default");
  if (c.command == "veronese" || c.command == "secant" || c.command == "ix-tangent") j["n"] = c.n;
  if (c.command == "secant") j["kmax"] = c.kmax;
  if (c.command == "scroll") j["r"] = c.r;
  if (c.command == "family-check") {
    j["family"] = c.family_path;
    j["center"] = c.center_path;
  }
  return j;
}

/// Schwartz-Zippel note: a sample undershoots a generic rank with probability at most D/p.
std::string soundness(const RunConfig& c, std::size_t degree_bound) {
  if (c.field.is_rational()) return {};
  std::ostringstream s;
  s << "Generic ranks are maxima over random samples and can only undershoot. Each sample undershoots with "
       "probability at most "
    << ratio(degree_bound, 1) << "/" << c.field.modulus() << " (Schwartz-Zippel, degree bound " << degree_bound
    << ", field size " << c.field.modulus() << ").";
  return s.str();
}

json violations_json(const ProjectabilityReport& p) {
  json out = json::array();
  for (const auto& v : p.violations) {
    json t = json::array(), o = json::array();
    for (const auto& x : v.t) t.push_back(x.to_string());
    for (const auto& x : v.other) o.push_back(x.to_string());
    out.push_back({{"kind", to_string(v.kind)},
                   {"jet", v.jet},
                   {"t", t},
                   {v.jet ? "direction" : "s", o},
                   {"meet_dim", v.meet_dim}});
  }
  return out;
}

void add_projectability(Report& rep, const std::string& name, const ProjectabilityReport& p) {
  rep.add(name + ".violations", 0, p.violations.size(), p.ok());
  rep.details[name] = {{"pairs", p.pairs_tested},
                       {"jet_pairs", p.jet_pairs_tested},
                       {"skew_spans", p.skew_spans},
                       {"plane_spans", p.plane_spans},
                       {"modular_law_failures", p.law_failures},
                       {"first_order_only", true},
                       {"violations", violations_json(p)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

ProjSubspace center_from_json(const json& j, Field f) {
  try {
    const auto ambient = j.at("ambient").get<std::size_t>();
    const auto& rows = j.at("rows");
    Matrix m(rows.size(), ambient + 1, f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != ambient + 1) throw Error("center row " + std::to_string(i) + " has wrong length");
      for (std::size_t c = 0; c <= ambient; ++c) {
        const auto& e = rows[i][c];
        m(i, c) = e.is_string() ? Scalar::parse(e.get<std::string>(), f) : Scalar(e.get<long>(), f);
      }
    }
    return ProjSubspace::from_rows(m);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed center JSON: ") + e.what());
  }
}

}  // namespace

void RunConfig::validate() const {
  auto guard = [&](std::size_t v, std::size_t lo, std::size_t hi, const char* what) {
    if (v < lo) throw Error(std::string(what) + " must be at least " + std::to_string(lo));
    if (v > hi && !unsafe_size) {
      throw Error(std::string(what) + " above " + std::to_string(hi) + " needs --unsafe-size");
    }
  };
  if (!field.is_rational() && field.modulus() <= 1000000) throw Error("--prime must exceed 10^6");
  if (command == "veronese") guard(n, 1, 6, "n");
  if (command == "secant") {
    guard(n, 1, 6, "n");
    if (kmax < 1 || kmax > n) throw Error("kmax must satisfy 1 <= kmax <= n");
  }
  if (command == "scroll") guard(r, 1, 4, "r");
  if (command == "ix-tangent") {
    guard(n, 2, 4, "n");
    if (!field.is_rational()) throw Error("ix-tangent runs over the rationals only");
  }
  if (command == "family-check" && family_path.empty()) throw Error("family check needs a family file");
}

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::add(std::string name, json expected, json observed, bool ok) {
  checks.push_back({std::move(name), std::move(expected), std::move(observed), ok});
}

void Report::note(std::string name, json observed) { checks.push_back({std::move(name), nullptr, std::move(observed), true}); }

json Report::to_json(bool with_timing) const {
  json cs = json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name}, {"expected", c.expected}, {"observed", c.observed}, {"pass", c.pass}});
  json j = {{"schema", 1}, {"config", config}, {"checks", cs}, {"details", details}, {"pass", pass()}};
  if (!soundness_note.empty()) j["soundness"] = soundness_note;
  if (with_timing) j["timing_ms"] = timing_ms;
  return j;
}

std::string Report::summary() const {
  std::ostringstream s;
  s << "glab " << config.value("command", "?") << " [" << config.value("field", "?") << ", seed "
    << config.value("seed", 0) << "]\n";
  for (const auto& c : checks) {
    s << (c.expected.is_null() ? "  info " : c.pass ? "  PASS " : "  FAIL ") << c.name << ": " << c.observed.dump();
    if (!c.expected.is_null()) s << " (expected " << c.expected.dump() << ")";
    s << "\n";
  }
  if (!soundness_note.empty()) s << "  note: " << soundness_note << "\n";
  s << (pass() ? "PASS" : "FAIL") << " in " << static_cast<long>(timing_ms) << " ms\n";
  return s.str();
}

Report cmd_veronese(const RunConfig& c) {
  c.validate();
  Report rep;
  rep.config = config_echo(c);
  const std::size_t n = c.n;
  const std::size_t trials = c.trials_or(1000);
  const Rng base(c.seed);

  Rng r0 = base.split(0);
  const auto dv = double_veronese_check(n, r0, trials, 100, c.field);
  rep.add("double_veronese.minor_rank", binomial(n + 2, 2), dv.minor_rank, dv.minor_rank == dv.expected_rank);
  rep.add("double_veronese.injective", true, dv.injective, dv.injective);
  rep.add("double_veronese.differential_rank", n + 1, dv.min_differential_rank, dv.immersive);
  rep.details["double_veronese"] = {{"exhaustive_points_F5", dv.exhaustive_points},
                                    {"random_pairs", dv.random_pairs},
                                    {"immersion_points", dv.immersion_points}};

  const LineFamily v = veronese_family(n, c.field);
  const ProjectionMap p = veronese_projection(n, c.field);
  Rng r1 = base.split(1);
  add_projectability(rep, "projectability", projectability_check(v, p, trials, c.jet_trials, r1));
  if (n == 1) {
    const Field f7 = Field::prime(7);
    add_projectability(rep, "projectability_exhaustive_F7",
                       projectability_exhaustive(veronese_family(1, f7), veronese_projection(1, f7)));
  }

  Rng r2 = base.split(2);
  const auto u = union_dimension(v, r2);
  rep.add("union_dimension", n + 1, u.dim, u.dim == n + 1 && u.exact);

  Rng r3 = base.split(3);
  const auto sk = skewness_check(v, trials, r3);
  rep.add("skewness.fraction", "1", ratio(sk.skew, sk.pairs), sk.pairs > 0 && sk.skew == sk.pairs);

  rep.soundness_note = soundness(c, n + 2);
  return rep;
}

Report cmd_secant(const RunConfig& c) {
  c.validate();
  Report rep;
  rep.config = config_echo(c);
  const std::size_t n = c.n;
  const std::size_t trials = c.trials_or(20);
  const Rng base(c.seed);
  const LineFamily v = veronese_family(n, c.field);

  json table = json::array();
  for (std::size_t k = 1; k <= c.kmax; ++k) {
    Rng rk = base.split(k);
    const auto s = secant_defect(v, k, trials, rk);
    const std::string key = "secant.k=" + std::to_string(k);
    rep.add(key + ".r_k", 2 * k + 1, s.r_k, s.r_k == 2 * k + 1);
    rep.add(key + ".delta_k", k, s.delta_k, !s.witness_failure && s.delta_k == k);
    rep.add(key + ".secant_dim", (k + 1) * (n - k), s.secant_dim, s.secant_dim == (k + 1) * (n - k));
    table.push_back({{"k", k},
                     {"r_k", s.r_k},
                     {"delta_k", s.delta_k},
                     {"secant_dim", s.secant_dim},
                     {"witness_rule", to_string(s.rule)}});
  }
  rep.details["table"] = table;

  for (std::size_t i = 1; i <= c.kmax; ++i)
    for (std::size_t j = i; i + j <= c.kmax; ++j) {
      Rng rs = base.split(1000 + 100 * i + j);
      const auto s = superadditivity_check(v, i, j, trials, rs);
      rep.add("superadditivity.i=" + std::to_string(i) + ",j=" + std::to_string(j),
              ">= " + std::to_string(s.delta_i + s.delta_j),
              json{{"delta_i", s.delta_i}, {"delta_j", s.delta_j}, {"delta_sum", s.delta_sum}}, s.holds());
    }
  rep.soundness_note = soundness(c, (2 * c.kmax + 1) * (c.kmax + 1) * (n + 1));
  return rep;
}

Report cmd_scroll(const RunConfig& c) {
  c.validate();
  Report rep;
  rep.config = config_echo(c);
  const std::size_t r = c.r;
  const Field f = c.field;
  const std::size_t trials = c.trials_or(100);
  const Rng base(c.seed);

  const PlaneFamily fiber = scroll_fiber_family(r, f);
  const PlaneFamily dual = scroll_dual_family(r, f);
  const bool orth = (fiber.matrix() * dual.matrix().transpose()).is_zero();
  rep.add("scroll.orthogonality", true, orth, orth);

  Rng r0 = base.split(0);
  std::size_t pairs = 0, points = 0;
  auto test_pair = [&](const std::vector<Scalar>& t, const std::vector<Scalar>& s) {
    ++pairs;
    points += meet(dual.subspace_at(t), dual.subspace_at(s)).dim() == 0;
  };
  test_pair({Scalar::one(f), Scalar::zero(f)}, {Scalar::zero(f), Scalar::one(f)});
  for (std::size_t i = 0; i < trials; ++i) {
    const auto t = dual.generic_point(r0);
    const auto s = dual.generic_point(r0);
    if ((t[0] * s[1] - t[1] * s[0]).is_zero()) continue;
    test_pair(t, s);
  }
  rep.add("scroll.dual_pairs_meet_in_a_point", pairs, points, points == pairs);

  const ScrollLift lift = scroll_lift(r, f);
  const bool identity = lift.family.matrix().multiply_right(lift.projection.matrix().transpose()) == dual.matrix();
  rep.add("scroll.lift_identity", true, identity, identity);
  Matrix stacked(0, 2 * r + 4, f);
  for (long k = 0; k < static_cast<long>(2 * r + 4); ++k) {
    const std::vector<Scalar> t{Scalar::one(f), Scalar(k, f)};
    stacked = vstack(stacked, lift.family.eval(t));
  }
  const std::size_t lift_rank = rank(stacked);
  rep.add("scroll.lift_spans_ambient", 2 * r + 4, lift_rank, lift_rank == 2 * r + 4);

  Rng r1 = base.split(1);
  const auto u = union_dimension(dual, r1);
  rep.add("scroll.union_dimension", r + 2, u.dim, u.dim == r + 2 && u.exact);
  const bool compressed = u.dim <= 2 * r + 1;
  rep.add("scroll.compressed", true, compressed, compressed);

  Rng r2 = base.split(2);
  const LineFamily lines = scroll_line_family(r, f);
  const auto d1 = secant_defect_value(lines, 1, std::min<std::size_t>(trials, 5), r2);
  rep.note("scroll.line_family.delta_1", d1 ? json(*d1) : json("witness-failure"));
  rep.details["line_family"] = {{"param_dim", lines.param_dim()}, {"ambient", lines.ambient()}};

  rep.soundness_note = soundness(c, r + 3);
  return rep;
}

Report cmd_ix_tangent(const RunConfig& c) {
  c.validate();
  Report rep;
  rep.config = config_echo(c);
  const auto ix = ix_tangent_check(c.n);
  rep.add("ix_tangent.match", true, ix.match, ix.match);
  rep.add("ix_tangent.codimension", 2 * c.n, ix.codimension, ix.codimension == 2 * c.n);
  const auto mutated = ix_tangent_check(c.n, true);
  rep.add("ix_tangent.mutation_control", false, mutated.match, !mutated.match);
  rep.details["ix_tangent"] = {{"minors", ix.minors}, {"tangent_coordinates", ix.labels.size()}};
  return rep;
}

Report cmd_family_check(const RunConfig& c) {
  c.validate();
  Report rep;
  rep.config = config_echo(c);
  const Field f = c.field;
  const PlaneFamily plane = family_from_json(read_json_file(c.family_path), f);
  if (plane.matrix().rows() != 2) throw Error("family check needs a line family (2 rows)");
  const LineFamily fam(plane.matrix());
  const std::size_t trials = c.trials_or(200);
  const Rng base(c.seed);
  rep.details["family"] = {{"param_dim", fam.param_dim()}, {"ambient", fam.ambient()}, {"degree", fam.degree()}};

  Rng r0 = base.split(0);
  const auto sk = skewness_check(fam, trials, r0);
  rep.note("skewness.fraction", ratio(sk.skew, sk.pairs));
  Rng r1 = base.split(1);
  const auto u = union_dimension(fam, r1);
  rep.note("union_dimension", json{{"dim", u.dim}, {"exact", u.exact}});
  rep.note("compressed", u.dim <= fam.param_dim());

  if (!c.center_path.empty()) {
    const ProjSubspace center = center_from_json(read_json_file(c.center_path), f);
    if (center.ambient() != fam.ambient()) throw Error("center and family live in different ambients");
    Rng r2 = base.split(2);
    add_projectability(rep, "projectability",
                       projectability_check(fam, ProjectionMap::from_center(center), trials, c.jet_trials, r2));
  }
  if (fam.param_dim() >= 1) {
    Rng r3 = base.split(3);
    const std::size_t small = std::min<std::size_t>(trials, 5);
    const auto d1 = secant_defect_value(fam, 1, small, r3);
    rep.note("secant.delta_1", d1 ? json(*d1) : json("witness-failure"));
    if (2 * 2 <= fam.ambient()) rep.note("secant.dim_SX", secant_map_rank(fam, 1, small, r3));
  }
  rep.soundness_note = soundness(c, static_cast<std::size_t>(std::max(fam.degree(), 1)) * (fam.ambient() + 1));
  return rep;
}

Report run(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  Report rep;
  if (c.command == "veronese") rep = cmd_veronese(c);
  else if (c.command == "secant") rep = cmd_secant(c);
  else if (c.command == "scroll") rep = cmd_scroll(c);
  else if (c.command == "ix-tangent") rep = cmd_ix_tangent(c);
  else if (c.command == "family-check") rep = cmd_family_check(c);
  else throw Error("unknown command " + c.command);
  rep.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string field_name = "q";
  std::optional<std::uint64_t> prime;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;

  CLI::App app{"Exact checks for line families in Grassmannians"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", field_name, "Coefficient field: q (rationals)")->check(CLI::IsMember({"q", "Q"}));
    sub->add_option("--prime", prime, "Work over F_P; P must be prime and above 10^6");
    sub->add_option("--trials", trials, "Random samples per estimate");
    sub->add_option("--jet-trials", cfg.jet_trials, "First-order pairs for projectability");
    sub->add_option("--seed", seed, "Random seed (default: $GLAB_SEED, else 1)");
    sub->add_option("--json", cfg.json_path, "Write the JSON report to PATH ('-' for standard output)");
    sub->add_flag("--unsafe-size", cfg.unsafe_size, "Allow sizes beyond the built-in guards");
  };
  auto* ver = app.add_subcommand("veronese", "Double Veronese, projectability, union dimension, skewness");
  ver->add_option("--n", cfg.n, "Parameter dimension")->required();
  common(ver);
  auto* sec = app.add_subcommand("secant", "Secant spans, defects and dimensions of the Veronese");
  sec->add_option("--n", cfg.n, "Parameter dimension")->required();
  sec->add_option("--kmax", cfg.kmax, "Largest k")->required();
  common(sec);
  auto* scr = app.add_subcommand("scroll", "Scroll family, its dual and its lift");
  scr->add_option("--r", cfg.r, "Number of linear summands")->required();
  common(scr);
  auto* ix = app.add_subcommand("ix-tangent", "Tangent space of the incidence variety at the origin");
  ix->add_option("--n", cfg.n, "Parameter dimension")->required();
  common(ix);
  auto* fam = app.add_subcommand("family", "User-supplied line families");
  fam->require_subcommand(1);
  auto* chk = fam->add_subcommand("check", "Check a family file against an optional center");
  chk->add_option("path", cfg.family_path, "Family JSON")->required();
  chk->add_option("--center", cfg.center_path, "Center JSON {ambient, rows}");
  common(chk);

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  // Subcommand help is raised from inside the subcommand parse.
  for (auto* sub : {ver, sec, scr, ix, chk})
    if (sub->parsed()) cfg.command = sub == chk ? "family-check" : sub->get_name();

  try {
    if (prime) {
      if (!is_prime_number(*prime)) throw Error("--prime " + std::to_string(*prime) + " is not prime");
      if (*prime <= 1000000) throw Error("--prime must exceed 10^6");
      cfg.field = Field::prime(*prime);
    }
    if (seed) {
      cfg.seed = *seed;
    } else if (const char* env = std::getenv("GLAB_SEED")) {
      try {
        std::size_t used = 0;
        cfg.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw Error(std::string("GLAB_SEED is not an unsigned integer: ") + env);
      }
    }
    cfg.trials = trials;
    if (cfg.trials && *cfg.trials == 0) throw Error("--trials must be positive");
    cfg.validate();
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  Report rep;
  try {
    rep = run(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::ostream& human = cfg.json_path == "-" ? err : out;
  human << rep.summary();
  if (cfg.json_path == "-") {
    out << rep.to_json().dump(2) << "\n";
  } else if (!cfg.json_path.empty()) {
    std::ofstream file(cfg.json_path);
    if (!file) {
      err << "error: cannot write " << cfg.json_path << "\n";
      return kExitUsage;
    }
    file << rep.to_json().dump(2) << "\n";
  }
  return rep.pass() ? kExitPass : kExitFail;
}

}  // namespace glab::cli
