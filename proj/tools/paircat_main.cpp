#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "paircat/errors.hpp"
#include "paircat/sweep.hpp"

namespace {

// Config values must lose to command-line flags even across a mutually
// exclusive pair (config xi-range vs flag --xi), so drop config items whose
// partner option already has command-line results.
class FlagAwareConfig : public CLI::ConfigTOML {
 public:
  explicit FlagAwareConfig(const CLI::App* root) : root_(root) {}

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    auto overridden = [this](const CLI::ConfigItem& item) {
      static const std::pair<const char*, const char*> kPairs[] = {
          {"xi", "xi-range"},           {"xi-range", "xi"},
          {"phi", "phi-range"},         {"phi-range", "phi"},
          {"d", "d-range"},             {"d-range", "d"},
          {"gamma-t", "gamma-t-range"}, {"gamma-t-range", "gamma-t"}};
      if (item.parents.size() != 1) return false;
      for (const auto& [name, partner] : kPairs) {
        if (item.name != name) continue;
        const CLI::App* sub = root_->get_subcommand_no_throw(item.parents.front());
        if (sub == nullptr) return false;
        const CLI::Option* opt = sub->get_option_no_throw(std::string("--") + partner);
        return opt != nullptr && opt->count() > 0;
      }
      return false;
    };
    items.erase(std::remove_if(items.begin(), items.end(), overridden), items.end());
    return items;
  }

 private:
  const CLI::App* root_;
};

struct CommonArgs {
  double xi = 2.0;
  std::string xi_range;
  std::vector<int> q = {0};
  double phi = 1.5707963267948966;  // pi/2
  std::string phi_range;
  int n_max = 100;
  int threads = 1;
  std::string out_path;
};

void add_common_options(CLI::App* sub, CommonArgs* args) {
  auto* xi = sub->add_option("--xi", args->xi, "Pair cat amplitude |xi| (single value)");
  auto* xi_range =
      sub->add_option("--xi-range", args->xi_range, "Grid over |xi| as start:stop:steps");
  xi->excludes(xi_range);
  sub->add_option("--q", args->q, "Photon number difference; repeat for several values");
  auto* phi = sub->add_option("--phi", args->phi, "Cat phase phi (single value)");
  auto* phi_range =
      sub->add_option("--phi-range", args->phi_range, "Grid over phi as start:stop:steps");
  phi->excludes(phi_range);
  sub->add_option("--n-max", args->n_max, "Ladder truncation")->check(CLI::PositiveNumber);
  sub->add_option("--threads", args->threads, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", args->out_path, "Output CSV path (default: stdout)");
  sub->configurable();
}

paircat::GridRange pick_range(const std::string& range_text, double single) {
  if (!range_text.empty()) return paircat::GridRange::parse(range_text);
  return paircat::GridRange::single(single);
}

void fill_common(const CommonArgs& args, paircat::SweepConfig* cfg) {
  cfg->xi = pick_range(args.xi_range, args.xi);
  cfg->q = args.q;
  cfg->phi = pick_range(args.phi_range, args.phi);
  cfg->n_max = args.n_max;
  cfg->threads = args.threads;
}

int emit(const paircat::SweepConfig& cfg, const std::string& out_path) {
  const std::string csv = paircat::run_sweep(cfg);
  if (out_path.empty()) {
    std::cout << csv;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << out_path << "'\n";
    return 1;
  }
  out << csv;
  return out.good() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pair cat state entanglement and teleportation sweeps"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Config file with [entanglement]/[witness]/[fidelity] sections of key=value "
                 "lines; command-line flags win");
  app.config_formatter(std::make_shared<FlagAwareConfig>(&app));

  CommonArgs ent_args, wit_args, fid_args;
  double ent_d = 0.0, wit_d = 0.0, fid_gt = 0.0;
  std::string ent_d_range, wit_d_range, fid_gt_range;
  std::vector<double> fid_alpha = {1.0};
  int fid_k_max = 64;

  auto* ent = app.add_subcommand(
      "entanglement", "Relative entropy of entanglement over a parameter grid");
  add_common_options(ent, &ent_args);
  auto* ent_d_opt = ent->add_option("--d", ent_d, "Damping degree d = gamma t (single value)");
  auto* ent_d_range_opt =
      ent->add_option("--d-range", ent_d_range, "Grid over d as start:stop:steps");
  ent_d_opt->excludes(ent_d_range_opt);

  auto* wit = app.add_subcommand(
      "witness", "Reduction distillability witness over a parameter grid");
  add_common_options(wit, &wit_args);
  auto* wit_d_opt = wit->add_option("--d", wit_d, "Damping degree d = gamma t (single value)");
  auto* wit_d_range_opt =
      wit->add_option("--d-range", wit_d_range, "Grid over d as start:stop:steps");
  wit_d_opt->excludes(wit_d_range_opt);

  auto* fid = app.add_subcommand(
      "fidelity", "Outcome-averaged teleportation fidelity over a parameter grid");
  add_common_options(fid, &fid_args);
  fid->add_option("--alpha", fid_alpha, "Coherent target amplitude; repeat for several values");
  fid->add_option("--k-max", fid_k_max, "Target truncation")->check(CLI::NonNegativeNumber);
  auto* fid_gt_opt =
      fid->add_option("--gamma-t", fid_gt, "Damping degree gamma t (single value; 0 = pure)");
  auto* fid_gt_range_opt =
      fid->add_option("--gamma-t-range", fid_gt_range, "Grid over gamma t as start:stop:steps");
  fid_gt_opt->excludes(fid_gt_range_opt);

  CLI11_PARSE(app, argc, argv);

  try {
    paircat::SweepConfig cfg;
    std::string out_path;
    if (ent->parsed()) {
      cfg.mode = paircat::SweepMode::entanglement;
      fill_common(ent_args, &cfg);
      cfg.damping = pick_range(ent_d_range, ent_d);
      out_path = ent_args.out_path;
    } else if (wit->parsed()) {
      cfg.mode = paircat::SweepMode::witness;
      fill_common(wit_args, &cfg);
      cfg.damping = pick_range(wit_d_range, wit_d);
      out_path = wit_args.out_path;
    } else {
      cfg.mode = paircat::SweepMode::fidelity;
      fill_common(fid_args, &cfg);
      cfg.damping = pick_range(fid_gt_range, fid_gt);
      cfg.alpha = fid_alpha;
      cfg.k_max = fid_k_max;
      out_path = fid_args.out_path;
    }
    return emit(cfg, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
