// Command-line front end. Exit codes: 0 ok, 1 check failure, 2 usage, 3 input error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "srw/builders.hpp"
#include "srw/errw.hpp"
#include "srw/graph_io.hpp"
#include "srw/harness.hpp"
#include "srw/mixing_measure.hpp"
#include "srw/verify.hpp"
#include "srw/vrjp.hpp"
#include "srw/zoo.hpp"

using namespace srw;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kUsage = 2, kInputError = 3;

struct Common {
  std::string graph;
  std::string start;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::vector<std::string> tol;
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("SRW_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "SRW_SEED is not an unsigned integer");
    }
  }
  return 0;
}

WeightConfig load_config(const Common& c) {
  if (c.graph.empty()) throw Error(ErrorCode::ParseError, "--graph is required");
  auto doc = read_graph_file(c.graph);
  return doc.config(c.start.empty() ? std::nullopt : std::optional<VertexId>(c.start));
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-")
    std::cout << text;
  else
    write_text_file(c.out, text);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::set<std::string> split_set(const std::string& s) {
  auto v = split(s, ',');
  return {v.begin(), v.end()};
}

void add_graph_opts(CLI::App* app, Common& c, bool start = true) {
  app->add_option("--graph", c.graph, "graph file (JSON)")->required();
  if (start) app->add_option("--start", c.start, "start vertex (overrides the file)");
}

void add_output_opts(CLI::App* app, Common& c, bool csv) {
  app->add_option("--out", c.out, "output file (default stdout)");
  if (csv)
    app->add_option("--format", c.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  else
    app->add_option("--format", c.format, "json")->check(CLI::IsMember({"json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Star-reinforced random walks: simulation, exact path laws and mixing-measure checks"};
  app.require_subcommand(1);
  Common c;
  c.seed = 0;

  // graph build | validate
  auto* graph = app.add_subcommand("graph", "build or validate graph files");
  graph->require_subcommand(1);
  auto* gbuild = graph->add_subcommand("build", "write a canonical graph file");
  std::string kind = "zoo", zoo_name, contexts, mode = "doubled", glue, input;
  int s = 2, k = 2;
  bool at_most = false;
  gbuild->add_option("--kind", kind, "de-bruijn|amnesia|rwde|zoo|canonical")
      ->check(CLI::IsMember({"de-bruijn", "amnesia", "rwde", "zoo", "canonical"}));
  gbuild->add_option("--s", s, "alphabet size");
  gbuild->add_option("--k", k, "word length");
  gbuild->add_option("--name", zoo_name, "zoo graph name");
  gbuild->add_option("--contexts", contexts, "amnesia: comma-separated contexts to keep (variable order)");
  gbuild->add_flag("--at-most", at_most, "amnesia pruning uses length <= instead of <");
  gbuild->add_option("--mode", mode, "rwde: doubled|glued")->check(CLI::IsMember({"doubled", "glued"}));
  gbuild->add_option("--glue", glue, "rwde: glued vertex");
  gbuild->add_option("--input", input, "rwde: directed graph {vertices:[..], edges:[[a,b],..]}; canonical: graph file");
  gbuild->add_option("--start", c.start, "start vertex to record");
  gbuild->add_option("--out", c.out, "output file (default stdout)");

  auto* gvalidate = graph->add_subcommand("validate", "check every graph invariant");
  gvalidate->add_option("--graph", c.graph, "graph file (JSON)")->required();

  // sim errw | vrjp
  auto* sim = app.add_subcommand("sim", "simulate a trajectory");
  sim->require_subcommand(1);
  auto* serrw = sim->add_subcommand("errw", "edge-reinforced walk");
  std::uint64_t steps = 100, jumps = 0, replicates = 100;
  double horizon_time = 0;
  add_graph_opts(serrw, c);
  serrw->add_option("--steps", steps, "number of steps");
  serrw->add_option("--seed", c.seed, "master seed (default $SRW_SEED or 0)");
  add_output_opts(serrw, c, true);
  auto* svrjp = sim->add_subcommand("vrjp", "vertex-reinforced jump process with sampled conductances");
  add_graph_opts(svrjp, c);
  auto* jopt = svrjp->add_option("--jumps", jumps, "stop after N jumps");
  auto* topt = svrjp->add_option("--time", horizon_time, "stop at time T");
  jopt->excludes(topt);
  svrjp->add_option("--seed", c.seed, "master seed (default $SRW_SEED or 0)");
  add_output_opts(svrjp, c, true);

  // prob path
  auto* prob = app.add_subcommand("prob", "exact path probabilities");
  prob->require_subcommand(1);
  auto* ppath = prob->add_subcommand("path", "probability of a path");
  std::string path_text, method = "sequential";
  add_graph_opts(ppath, c);
  ppath->add_option("--path", path_text, "comma-separated vertex ids")->required();
  ppath->add_option("--method", method, "sequential|closed")->check(CLI::IsMember({"sequential", "closed"}));
  add_output_opts(ppath, c, false);

  // density eval | normalize
  auto* density = app.add_subcommand("density", "mixing-measure density");
  density->require_subcommand(1);
  auto* deval = density->add_subcommand("eval", "log density at a point of L1");
  std::string y_text, coords_text;
  add_graph_opts(deval, c);
  auto* yopt = deval->add_option("--y", y_text, "edge values in canonical edge order, comma-separated");
  auto* copt = deval->add_option("--coords", coords_text, "chart coordinates, comma-separated");
  yopt->excludes(copt);
  add_output_opts(deval, c, false);
  auto* dnorm = density->add_subcommand("normalize", "integral of the density by quadrature");
  int order = 48;
  bool power = false;
  add_graph_opts(dnorm, c);
  dnorm->add_option("--order", order, "Gauss-Legendre points per coordinate");
  dnorm->add_flag("--power-substitution", power, "allow alpha < 1 with stronger endpoint grading");
  dnorm->add_option("--seed", c.seed, "seed for quasi-Monte Carlo shifts (dimension 3)");
  add_output_opts(dnorm, c, false);

  // estimate-y
  auto* esty = app.add_subcommand("estimate-y", "Monte Carlo estimate of the occupation limit Y");
  add_graph_opts(esty, c);
  esty->add_option("--steps", steps, "steps per run");
  esty->add_option("--replicates", replicates, "independent runs");
  esty->add_option("--seed", c.seed, "master seed (default $SRW_SEED or 0)");
  add_output_opts(esty, c, false);

  // verify all
  auto* verify = app.add_subcommand("verify", "verification suite");
  verify->require_subcommand(1);
  auto* vall = verify->add_subcommand("all", "run every check on the built-in graph zoo");
  vall->add_option("--seed", c.seed, "master seed (default $SRW_SEED or 0)");
  vall->add_option("--tol", c.tol, "threshold override key=value (repeatable)");
  add_output_opts(vall, c, false);

  try {
    c.seed = default_seed();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*gvalidate) {
      auto text = read_text_file(c.graph);
      parse_graph_document(text);
      std::cout << "ok\n";
      return kOk;
    }
    if (*gbuild) {
      std::shared_ptr<const StarGraph> g;
      std::vector<Rational> alpha;
      std::optional<Index> start;
      if (kind == "zoo") {
        for (const auto& z : graph_zoo())
          if (z.name == zoo_name) {
            g = z.config.graph_ptr();
            alpha = z.config.class_alpha();
            start = z.config.start();
          }
        if (!g) throw Error(ErrorCode::ParseError, "unknown zoo graph \"" + zoo_name + "\"");
      } else if (kind == "canonical") {
        auto doc = read_graph_file(input);
        g = doc.graph;
        alpha = doc.class_alpha;
        start = doc.start;
      } else {
        if (kind == "de-bruijn") {
          g = std::make_shared<const StarGraph>(build_de_bruijn(s, k));
        } else if (kind == "amnesia") {
          auto a = build_amnesia(s, k);
          if (!contexts.empty())
            a = restrict_variable_order(a, split_set(contexts), at_most ? PruneComparison::AtMost
                                                                        : PruneComparison::Shorter);
          g = std::make_shared<const StarGraph>(std::move(a));
        } else {
          json d = json::parse(read_text_file(input));
          DirectedGraph g1;
          g1.vertices = d.at("vertices").get<std::vector<std::string>>();
          for (const auto& e : d.at("edges")) g1.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
          g = std::make_shared<const StarGraph>(
              build_rwde(g1, mode == "glued" ? RwdeMode::Glued : RwdeMode::Doubled, glue));
        }
        alpha.assign(g->class_count(), Rational(1));
      }
      if (!c.start.empty()) start = g->require(c.start);
      emit(c, canonical_graph_text(*g, alpha, start));
      return kOk;
    }
    if (*serrw) {
      auto cfg = load_config(c);
      Rng rng = make_stream(c.seed, 0);
      auto path = simulate_errw(cfg, steps, rng);
      std::ostringstream os;
      if (c.format == "csv") {
        write_path_csv(os, cfg.graph(), path.vertices);
      } else {
        json j = {{"seed", c.seed}, {"steps", steps}, {"vertices", json::array()}};
        for (Index v : path.vertices) j["vertices"].push_back(cfg.graph().id(v));
        os << j.dump(2) << "\n";
      }
      emit(c, os.str());
      return kOk;
    }
    if (*svrjp) {
      auto cfg = load_config(c);
      Rng rng = make_stream(c.seed, 0);
      auto w = sample_class_conductances(cfg, rng);
      Horizon h = *topt ? Horizon::until(horizon_time) : Horizon::jump_count(*jopt ? jumps : 100);
      auto t = simulate_vrjp(cfg.graph(), w, cfg.start(), h, rng);
      std::ostringstream os;
      if (c.format == "csv") {
        write_timed_csv(os, cfg.graph(), t);
      } else {
        json j = {{"seed", c.seed}, {"times", t.times}, {"vertices", json::array()}, {"maxResidual", t.max_residual}};
        for (Index v : t.vertices) j["vertices"].push_back(cfg.graph().id(v));
        os << j.dump(2) << "\n";
      }
      emit(c, os.str());
      return kOk;
    }
    if (*ppath) {
      auto cfg = load_config(c);
      auto rec = parse_path(cfg.graph(), path_text);
      Rational p = method == "closed" ? path_probability_closed_form(cfg, rec, true)
                                      : path_probability_sequential(cfg, rec);
      json j = {{"path", path_text}, {"method", method}, {"probability", format_rational(p)}, {"value", p.get_d()}};
      emit(c, j.dump(2) + "\n");
      return kOk;
    }
    if (*deval) {
      auto cfg = load_config(c);
      auto params = DensityParams::make(cfg);
      EdgeVec y;
      if (!coords_text.empty()) {
        std::vector<double> coords;
        for (const auto& t : split(coords_text, ',')) coords.push_back(to_double(parse_rational(t)));
        if (coords.size() != params.chart.dimension())
          throw Error(ErrorCode::OutOfDomain, "expected " + std::to_string(params.chart.dimension()) + " coordinates");
        y = params.chart.to_l1(coords);
      } else if (!y_text.empty()) {
        for (const auto& t : split(y_text, ',')) y.push_back(to_double(parse_rational(t)));
      } else {
        y = params.chart.anchor();
      }
      auto v = log_density(params, y);
      json j = {{"logDensity", v.to_json()}, {"value", std::exp(v.total)}, {"chart", params.chart.to_json(cfg.graph())}};
      emit(c, j.dump(2) + "\n");
      return kOk;
    }
    if (*dnorm) {
      auto cfg = load_config(c);
      NormalizationOptions no;
      no.quadrature.order = order;
      no.quadrature.seed = c.seed;
      no.power_substitution = power;
      auto r = normalization_integral(DensityParams::make(cfg), no);
      json j = {{"value", r.value},     {"errorEstimate", r.error_estimate}, {"method", r.method},
                {"order", r.order},     {"evaluations", r.evaluations},      {"seed", r.seed}};
      emit(c, j.dump(2) + "\n");
      return kOk;
    }
    if (*esty) {
      auto cfg = load_config(c);
      auto est = estimate_occupation(cfg, steps, replicates, c.seed);
      json j = est.to_json(cfg.graph());
      j["seed"] = c.seed;
      emit(c, j.dump(2) + "\n");
      return kOk;
    }
    if (*vall) {
      VerifyOptions vo;
      vo.seed = c.seed;
      for (const auto& t : c.tol) vo.tol.apply_override(t);
      auto rep = verify_suite(vo);
      emit(c, rep.to_json().dump(2) + "\n");
      std::cerr << rep.count(Status::Pass) << " pass, " << rep.count(Status::Fail) << " fail, "
                << rep.count(Status::Skip) << " skip\n";
      return rep.ok() ? kOk : kCheckFailed;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}
