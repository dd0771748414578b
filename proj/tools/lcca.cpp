#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "lcca/app/commands.hpp"

namespace {

using namespace lcca;
using namespace lcca::app;

const std::map<std::string, PendulumAlgorithm> kAlgorithms{
    {"alg1", PendulumAlgorithm::Alg1}, {"alg2", PendulumAlgorithm::Alg2}, {"single-set", PendulumAlgorithm::SingleSet}};

const std::map<std::string, IconLayout> kLayouts{{"disjoint", IconLayout::Disjoint},
                                                  {"pairwise", IconLayout::PairwiseShared}};

void add_sigma(CLI::App* app, std::optional<double>& sigma) {
  app->add_option_function<double>("--sigma", [&sigma](double v) { sigma = v; }, "Kernel bandwidth (default: median)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local CCA metrics and diffusion maps"};
  app.require_subcommand(1);

  MetricCompareOptions mc;
  auto* c_mc = app.add_subcommand("metric-compare", "Midpoint vs endpoint-averaged metric on the warped square");
  c_mc->add_option("--n", mc.n, "Number of samples")->capture_default_str();
  c_mc->add_option("--seed", mc.seed)->capture_default_str();
  c_mc->add_option("--k-neighbors", mc.k_neighbors)->capture_default_str();
  c_mc->add_option("--ridge", mc.ridge)->capture_default_str();
  c_mc->add_option("--out-dir", mc.out_dir)->capture_default_str();

  PendulumOptions pe;
  auto* c_pe = app.add_subcommand("pendulum", "Coupled pendulum movies");
  c_pe->add_flag("--noisy", pe.noisy, "Add an extra pendulum to each movie");
  c_pe->add_option("--algorithm", pe.algorithm)->transform(CLI::CheckedTransformer(kAlgorithms, CLI::ignore_case));
  c_pe->add_option("--n", pe.n)->capture_default_str();
  c_pe->add_option("--ts", pe.ts)->capture_default_str();
  c_pe->add_option("--anchors", pe.anchors, "Number of anchors for alg2 (0: all samples)")->capture_default_str();
  c_pe->add_option("--window", pe.window)->capture_default_str();
  c_pe->add_option("--k-neighbors", pe.k_neighbors, "Neighborhood size for alg1")->capture_default_str();
  c_pe->add_option("--dz", pe.dz)->capture_default_str();
  c_pe->add_flag("--average-sides", pe.average_sides, "Average the x- and y-side metrics");
  add_sigma(c_pe, pe.sigma);
  c_pe->add_option("--ridge", pe.ridge)->capture_default_str();
  c_pe->add_option("--rel-tol", pe.rel_tol)->capture_default_str();
  c_pe->add_option("--seed", pe.seed)->capture_default_str();
  c_pe->add_option("--out-dir", pe.out_dir)->capture_default_str();

  IconsOptions ic;
  auto* c_ic = app.add_subcommand("icons", "Rotating icons, three movies");
  c_ic->add_option("--layout", ic.layout)->transform(CLI::CheckedTransformer(kLayouts, CLI::ignore_case));
  c_ic->add_option("--n", ic.n)->capture_default_str();
  c_ic->add_option("--window", ic.window)->capture_default_str();
  c_ic->add_option("--dz", ic.dz)->capture_default_str();
  c_ic->add_option("--side", ic.side, "Movie whose metric is used (0-based)")->capture_default_str();
  add_sigma(c_ic, ic.sigma);
  c_ic->add_option("--ridge", ic.ridge)->capture_default_str();
  c_ic->add_option("--rel-tol", ic.rel_tol)->capture_default_str();
  c_ic->add_option("--seed", ic.seed)->capture_default_str();
  c_ic->add_option("--out-dir", ic.out_dir)->capture_default_str();

  EmbedOptions em;
  auto* c_em = app.add_subcommand("embed", "Embed user data from CSV files");
  c_em->add_option_function<std::string>("--x", [&](const std::string& s) { em.x = s; }, "First observation set");
  c_em->add_option_function<std::string>("--y", [&](const std::string& s) { em.y = s; }, "Second observation set");
  c_em->add_option("--set", em.sets, "Observation set for the K-set pipeline (repeat)");
  c_em->add_option("--neighborhood", em.neighborhood, "window:W or knn:K")->capture_default_str();
  c_em->add_option("--algorithm", em.algorithm, "alg1, alg2 or euclidean")->capture_default_str();
  c_em->add_option("--anchors", em.anchors)->capture_default_str();
  c_em->add_option("--k-neighbors", [&](const CLI::results_t& r) {
    em.neighborhood = "knn:" + r.front();
    return true;
  });
  c_em->add_option("--window", [&](const CLI::results_t& r) {
    em.neighborhood = "window:" + r.front();
    return true;
  });
  c_em->add_option("--dz", em.dz)->capture_default_str();
  c_em->add_option("--side", em.side)->capture_default_str();
  c_em->add_flag("--average-sides", em.average_sides);
  add_sigma(c_em, em.sigma);
  c_em->add_option("--ridge", em.ridge)->capture_default_str();
  c_em->add_option("--rel-tol", em.rel_tol)->capture_default_str();
  c_em->add_option("--out-dir", em.out_dir)->capture_default_str();

  GenerateOptions ge;
  auto* c_ge = app.add_subcommand("generate", "Write a synthetic experiment to CSV");
  c_ge->add_option("experiment", ge.experiment, "warped, pendulum or icons")->required();
  c_ge->add_flag("--noisy", ge.noisy);
  c_ge->add_option("--layout", ge.layout)->transform(CLI::CheckedTransformer(kLayouts, CLI::ignore_case));
  c_ge->add_option_function<Index>("--n", [&](Index v) { ge.n = v; });
  c_ge->add_option("--ts", ge.ts)->capture_default_str();
  c_ge->add_option("--seed", ge.seed)->capture_default_str();
  c_ge->add_option("--out-dir", ge.out_dir)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*c_mc) return cmd_metric_compare(mc);
    if (*c_pe) return cmd_pendulum(pe);
    if (*c_ic) return cmd_icons(ic);
    if (*c_em) return cmd_embed(em);
    if (*c_ge) return cmd_generate(ge);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
