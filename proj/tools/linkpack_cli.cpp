#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <random>
#include <sstream>

#include "linkpack/burnside.hpp"
#include "linkpack/certify.hpp"
#include "linkpack/diagrams.hpp"
#include "linkpack/io.hpp"
#include "linkpack/magnus.hpp"
#include "linkpack/packing.hpp"

using namespace linkpack;
using io::Json;

namespace {

constexpr int kExitViolation = 2;
constexpr int kExitError = 1;

struct RunConfig {
  double epsilon = 0.0;
  std::uint64_t seed = 20240601;
  std::string input;
  std::string output;
  std::string csv;
  std::string coloring;
  std::string red = "r";
  std::string blue = "b";
  std::string pd;
  std::string word;
  std::string indices;
  std::int64_t modulus = 0;
  int generations = 1;
  int segments = 48;
  int theorem = 1;
  double a = 1.0;
  int k = 0;
  std::int64_t p = 0;
  std::int64_t g = 0;
  bool dc = false;
  int m = 1;
  std::vector<double> epsilons;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// "123" -> {1,2,3}; "1,2,3" or "1 2 3" also accepted.
std::vector<int> parse_indices(const std::string& text) {
  std::vector<int> out;
  const bool separated = text.find_first_of(", ") != std::string::npos;
  if (separated) {
    std::string t = text;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    int v = 0;
    while (in >> v) out.push_back(v);
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw PreconditionError("indices: expected digits 1-9, got '" + text + "'");
      out.push_back(c - '0');
    }
  }
  if (out.empty()) throw PreconditionError("indices: empty");
  return out;
}

/// Certificate of the chosen pair; epsilon defaults to the pair's constraint.
Certificate certify_link(const PLLink& link, const RunConfig& cfg) {
  double eps = cfg.epsilon;
  if (eps <= 0.0) {
    for (const auto& c : link.constraints()) {
      if ((c.a == cfg.red && c.b == cfg.blue) || (c.a == cfg.blue && c.b == cfg.red)) eps = c.min_dist;
    }
  }
  if (eps <= 0.0) throw PreconditionError("certify: no --epsilon and no constraint between the pair");
  return certificate(link, cfg.red, cfg.blue, eps);
}

int run_pack(const RunConfig& cfg) {
  const Packing p = multigeneration(cfg.epsilon, cfg.generations, cfg.segments);
  const PackingReport report = verify_packing(p, cfg.epsilon);
  if (!report.pass) throw InvariantError("pack: emitted packing failed verification: " + report.witness->reason);
  io::write_output(cfg.output, dump(io::to_json(p)));
  return 0;
}

int run_verify(const RunConfig& cfg) {
  const Packing p = io::packing_from_json(io::read_json(cfg.input));
  const double eps = cfg.epsilon > 0.0 ? cfg.epsilon : p.epsilon;
  const PackingReport report = verify_packing(p, eps);
  io::write_output(cfg.output, dump(io::to_json(report)));
  return report.pass ? 0 : kExitViolation;
}

int run_certify(const RunConfig& cfg) {
  const PLLink link = io::link_from_json(io::read_json(cfg.input));
  const Certificate cert = certify_link(link, cfg);
  if (!cfg.coloring.empty()) {
    const Grid grid = tessellate(cert.epsilon);
    io::write_output(cfg.coloring, dump(io::to_json(color_cells(grid, link, {cfg.red, cfg.blue}))));
  }
  io::write_output(cfg.output, dump(io::to_json(cert)));
  return 0;
}

int run_mu(const RunConfig& cfg) {
  const std::vector<int> seq = parse_indices(cfg.indices);
  const std::optional<std::int64_t> mod =
      cfg.modulus > 0 ? std::optional<std::int64_t>(cfg.modulus) : std::nullopt;
  if (!cfg.pd.empty() == !cfg.word.empty()) throw PreconditionError("mu: give exactly one of --pd, --word");
  MuResult r;
  if (!cfg.pd.empty()) {
    r = mu_bar(PDCode::parse(io::read_file(cfg.pd)), seq, mod);
  } else {
    // The word is read as a longitude over meridian generators 1..v.
    const Word w = Word::parse(cfg.word);
    const int v = std::max(w.max_generator(), *std::max_element(seq.begin(), seq.end()));
    const std::span<const int> prefix(seq.data(), seq.size() - 1);
    r.sequence = seq;
    r.coefficient = mu_coefficient(expand(w, v, IntegerRing{}), prefix);
    if (mod) {
      if (*mod < 2) throw PreconditionError("mu: modulus must be >= 2");
      BigInt res = r.coefficient % *mod;
      if (res < 0) res += *mod;
      r.modulus = mod;
      r.residue = res.convert_to<std::int64_t>();
    }
  }
  io::write_output(cfg.output, dump(io::to_json(r)));
  return 0;
}

int run_bounds(const RunConfig& cfg) {
  Json out;
  if (cfg.dc) {
    const CountBound b = dc_count_bound(cfg.epsilon);
    out = {{"name", "decorated_colorings"},
           {"inputs", {{"epsilon", cfg.epsilon}, {"cells", b.cells}, {"dim_cap", b.dim_cap}}},
           {"exact", b.exact ? Json(b.exact->str()) : Json(nullptr)},
           {"log_value", b.log_value}};
  } else if (cfg.g > 0) {
    out = io::to_json(qkp_order_bound(cfg.g, cfg.k, cfg.p));
  } else {
    const auto k = cfg.k > 0 ? std::optional<int>(cfg.k) : std::nullopt;
    const auto p = cfg.p > 0 ? std::optional<std::int64_t>(cfg.p) : std::nullopt;
    out = io::to_json(thm_bounds(cfg.theorem, cfg.epsilon, cfg.a, k, p));
  }
  io::write_output(cfg.output, dump(out));
  return 0;
}

int run_burnside(const RunConfig& cfg) {
  Json out{{"m", cfg.m},
           {"exponent", burnside_exponent(cfg.m)},
           {"order", burnside_order(cfg.m).str()}};
  if (cfg.m == 2) {
    const B23Element gens[] = {B23Element::x(), B23Element::y()};
    const auto group = b23_closure(gens);
    const bool exponent3 = std::all_of(group.begin(), group.end(), [](const B23Element& e) {
      return b23_pow(e, 3) == B23Element::identity();
    });
    out["model"] = {{"elements", group.size()},
                    {"exponent_3", exponent3},
                    {"abelian", b23_mul(gens[0], gens[1]) == b23_mul(gens[1], gens[0])}};
  }
  io::write_output(cfg.output, dump(out));
  return 0;
}

int run_density(const RunConfig& cfg) {
  std::vector<double> eps = cfg.epsilons;
  std::vector<Packing> packings;
  for (double e : eps) packings.push_back(multigeneration(e, cfg.generations, cfg.segments));
  std::vector<DensitySample> samples;
  for (const auto& p : packings) {
    samples.push_back({p.epsilon, static_cast<double>(p.generations.front().count)});
  }
  if (!cfg.csv.empty()) {
    std::ostringstream csv;
    io::write_density_csv(csv, packings);
    io::write_output(cfg.csv, csv.str());
  }
  io::write_output(cfg.output, dump(io::to_json(density_fit(std::move(samples)))));
  return 0;
}

int run_diagram(const RunConfig& cfg) {
  const PLLink link = io::link_from_json(io::read_json(cfg.input));
  io::write_output(cfg.output, diagram_from_link(link).to_text());
  return 0;
}

int run_hopf(const RunConfig& cfg) {
  io::write_output(cfg.output, dump(io::to_json(canonical_hopf(cfg.epsilon, Point3(0.5, 0.5, 0.5), cfg.segments))));
  return 0;
}

/// End-to-end tour on built-in inputs.
int run_demo(const RunConfig& cfg) {
  const double eps = cfg.epsilon > 0.0 ? cfg.epsilon : 0.1;
  Json out;
  const PLLink hopf = canonical_hopf(eps);
  const Certificate linked = certificate(hopf, "r", "b", eps);
  out["hopf_certificate"] = io::to_json(linked);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  const Eigen::Quaterniond q(normal(rng), normal(rng), normal(rng), normal(rng));
  const Eigen::Matrix3d R = q.normalized().toRotationMatrix();
  const Eigen::Vector3d c(0.5, 0.5, 0.5);
  const PLLink turned = rigid_transform(hopf, R, c - R * c);
  out["seed"] = cfg.seed;
  out["rotated_linking"] = linking_integer(turned.components()[0], turned.components()[1]);

  const PDCode pd = diagram_from_link(hopf);
  const int seq[] = {1, 2};
  out["hopf_mu12"] = mu_bar(pd, seq).coefficient.str();
  out["burnside_order_2"] = burnside_order(2).str();
  out["theorem1_log"] = thm_bounds(1, eps, 1.0).log_value;
  io::write_output(cfg.output, dump(out));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linkpack: linked-pair packings, certificates and link invariants"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for randomised steps")->capture_default_str();

  auto* pack = app.add_subcommand("pack", "Build and verify a multi-generation Hopf packing");
  pack->add_option("--epsilon", cfg.epsilon)->required()->check(CLI::PositiveNumber);
  pack->add_option("--generations", cfg.generations)->capture_default_str()->check(CLI::PositiveNumber);
  pack->add_option("--segments", cfg.segments)->capture_default_str();
  pack->add_option("--out", cfg.output);

  auto* verify = app.add_subcommand("verify", "Check a packing JSON; exit 2 on violations");
  verify->add_option("--input", cfg.input)->required()->check(CLI::ExistingFile);
  verify->add_option("--epsilon", cfg.epsilon);
  verify->add_option("--out", cfg.output);

  auto* cert = app.add_subcommand("certify", "Decorated-colouring certificate of a linked pair");
  cert->add_option("--input", cfg.input)->required()->check(CLI::ExistingFile);
  cert->add_option("--red", cfg.red)->capture_default_str();
  cert->add_option("--blue", cfg.blue)->capture_default_str();
  cert->add_option("--epsilon", cfg.epsilon, "Defaults to the pair's constraint");
  cert->add_option("--coloring", cfg.coloring, "Also write the run-length colouring here");
  cert->add_option("--out", cfg.output);

  auto* mu = app.add_subcommand("mu", "Non-repeating mu-bar invariant");
  mu->add_option("--pd", cfg.pd, "PD code file")->check(CLI::ExistingFile);
  mu->add_option("--word", cfg.word, "Longitude over meridians, e.g. \"1 2 -1 -2\"");
  mu->add_option("--indices", cfg.indices)->required();
  mu->add_option("--mod", cfg.modulus);
  mu->add_option("--out", cfg.output);

  auto* bounds = app.add_subcommand("bounds", "Upper-bound calculators (natural logs)");
  bounds->add_option("--theorem", cfg.theorem)->check(CLI::IsMember({1, 2, 4}))->capture_default_str();
  bounds->add_option("--epsilon", cfg.epsilon);
  bounds->add_option("--a", cfg.a)->capture_default_str();
  bounds->add_option("--k", cfg.k);
  bounds->add_option("--p", cfg.p);
  bounds->add_option("--g", cfg.g, "Report the quotient order bound for g generators instead");
  bounds->add_flag("--dc", cfg.dc, "Report the decorated-colouring count bound instead");
  bounds->add_option("--out", cfg.output);

  auto* burnside = app.add_subcommand("burnside", "Order of B(m,3)");
  burnside->add_option("--m", cfg.m)->required();
  burnside->add_option("--out", cfg.output);

  auto* density = app.add_subcommand("density", "Packing counts and log-log exponent fit");
  density->add_option("--epsilons", cfg.epsilons)->delimiter(',')->required();
  density->add_option("--generations", cfg.generations)->capture_default_str()->check(CLI::PositiveNumber);
  density->add_option("--segments", cfg.segments)->capture_default_str();
  density->add_option("--csv", cfg.csv, "epsilon,generation,count,min_pair_distance");
  density->add_option("--out", cfg.output);

  auto* demo = app.add_subcommand("demo", "Run the main computations on built-in inputs");
  demo->add_option("--epsilon", cfg.epsilon);
  demo->add_option("--seed", cfg.seed, "Seed for the random rotation");
  demo->add_option("--out", cfg.output);

  auto* diagram = app.add_subcommand("diagram", "PD code of a link JSON by generic projection");
  diagram->add_option("--input", cfg.input)->required()->check(CLI::ExistingFile);
  diagram->add_option("--out", cfg.output);

  auto* hopf = app.add_subcommand("hopf", "Canonical Hopf pair as link JSON");
  hopf->add_option("--epsilon", cfg.epsilon)->required()->check(CLI::PositiveNumber);
  hopf->add_option("--segments", cfg.segments)->capture_default_str();
  hopf->add_option("--out", cfg.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*pack) return run_pack(cfg);
    if (*verify) return run_verify(cfg);
    if (*cert) return run_certify(cfg);
    if (*mu) return run_mu(cfg);
    if (*bounds) return run_bounds(cfg);
    if (*burnside) return run_burnside(cfg);
    if (*density) return run_density(cfg);
    if (*demo) return run_demo(cfg);
    if (*diagram) return run_diagram(cfg);
    if (*hopf) return run_hopf(cfg);
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_constraint_violation() ? kExitViolation : kExitError;
  } catch (const ConstraintViolation& e) {
    std::cerr << "constraint violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
