// charlab: identity suites, calibration, character-family scans and
// exploratory reports for Dirichlet character sums.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "charlab/caps.hpp"
#include "charlab/explore.hpp"
#include "charlab/scan.hpp"
#include "charlab/sums.hpp"
#include "charlab/verify.hpp"

using namespace charlab;

namespace {

constexpr const char* kDefaultCaps = "charlab_caps.json";

int cmd_verify(const std::string& suite, const std::string& caps_path, int threads) {
  Caps caps;
  const Caps* cp = nullptr;
  if (suite_needs_caps(suite)) {
    caps = Caps::load(caps_path);
    cp = &caps;
  }
  return run_verify(suite, cp, std::cout, threads);
}

int cmd_calibrate(const std::string& out_path) {
  Caps caps = calibrate(&std::cerr);
  caps.save(out_path);
  std::cout << "wrote " << out_path << " with " << caps.entries.size() << " constants\n";
  for (const auto& e : caps.entries)
    std::cout << "  " << e.name << " = " << e.value << "  (raw " << e.raw << ", "
              << e.family << ")\n";
  return 0;
}

int cmd_char(const std::string& spec, bool info, const std::string& eval_n) {
  DirichletCharacter chi = DirichletCharacter::parse(spec);
  if (!eval_n.empty()) {
    UnitValue v = chi.eval(std::stoll(eval_n));
    if (v.is_zero())
      std::cout << "0\n";
    else
      std::cout << "e(" << v.num << "/" << v.den << ") = " << v.to_complex().real() << " + "
                << v.to_complex().imag() << "i\n";
    return 0;
  }
  if (info) {
    std::cout << "label:      " << chi.label() << "\n";
    std::cout << "modulus:    " << chi.modulus() << "\n";
    std::cout << "order:      " << chi.order() << "\n";
    std::cout << "parity:     " << (chi.parity() > 0 ? "even" : "odd") << "\n";
    std::cout << "conductor:  " << chi.conductor() << "\n";
    std::cout << "primitive:  " << (chi.is_primitive() ? "yes" : "no") << "\n";
    std::cout << "principal:  " << (chi.is_principal() ? "yes" : "no") << "\n";
    std::cout << "conrey:     " << chi.conrey_index() << "\n";
    auto n = n_chi(chi);
    std::cout << "n_chi:      " << (n ? std::to_string(*n) : "none") << "\n";
    return 0;
  }
  std::cout << chi.label() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"character-sum laboratory"};
  app.set_config("--config");
  app.require_subcommand(1);

  std::string caps_path = kDefaultCaps;
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware)")->capture_default_str();

  // verify
  auto* verify = app.add_subcommand("verify", "run an identity/property suite");
  std::string suite;
  verify->add_option("suite", suite, "fejer|gauss|polya|gs-identity|orthogonality|convolution|pretentious|all")
      ->required();
  verify->add_option("--caps", caps_path, "caps file for calibrated suites")->capture_default_str();
  verify->add_option("--threads", threads, "worker threads (0 = hardware)");

  // calibrate
  auto* calib = app.add_subcommand("calibrate", "run calibration families and freeze caps");
  std::string calib_out = kDefaultCaps;
  calib->add_option("--out", calib_out, "output caps file")->capture_default_str();

  // scan
  auto* scan = app.add_subcommand("scan", "scan a character family into CSV");
  ScanConfig cfg;
  std::string eps_csv = "0.1,0.25,0.5";
  std::string parity_str, out_path;
  u64 order_flag = 0;
  scan->add_option("--qmin", cfg.qmin, "smallest modulus")->capture_default_str();
  scan->add_option("--qmax", cfg.qmax, "largest modulus")->capture_default_str();
  scan->add_option("--order", order_flag, "restrict to this character order");
  scan->add_option("--parity", parity_str, "odd|even");
  scan->add_option("--eps", eps_csv, "comma-separated eps grid")->capture_default_str();
  scan->add_option("--twist-T", cfg.twist_T, "t-range for the twist scan")->capture_default_str();
  scan->add_option("--seed", cfg.seed, "seed recorded in the config hash")->capture_default_str();
  scan->add_flag("--prime-q", cfg.prime_q, "restrict to prime moduli");
  scan->add_option("--q-cap", cfg.q_cap, "dense per-character limit guard")->capture_default_str();
  scan->add_flag("--timings", cfg.timings, "record real per-row wall times (breaks byte-identity)");
  scan->add_option("--out", out_path, "output CSV path (default stdout)");
  scan->add_option("--threads", threads, "worker threads (0 = hardware)");

  // explore
  auto* explore = app.add_subcommand("explore", "finite-scale reports of the asymptotic statements");
  ExploreArgs ex;
  double ex_T = -1;
  explore->add_option("target", ex.target, "cestolog|hmt|orders|hildebrand")->required();
  explore->add_option("--char", ex.char_spec, "character spec q=..;e=..");
  explore->add_option("--synthetic", ex.synthetic, "minus-one | root:a/m | twist:t");
  explore->add_option("--x", ex.x, "range limit")->capture_default_str();
  explore->add_option("--T", ex_T, "twist minimization range");
  explore->add_option("--xi", ex.xi, "xi family, e.g. log2-quarter")->capture_default_str();
  explore->add_option("--q", ex.q, "modulus (orders target)");
  explore->add_option("--order", ex.order, "character order filter (orders target)");
  explore->add_option("--psi", ex.psi_spec, "explicit psi spec (orders target)");
  std::string ex_out;
  explore->add_option("--out", ex_out, "output JSON path (default stdout)");

  // char
  auto* chr = app.add_subcommand("char", "inspect or evaluate a single character");
  std::string chr_spec, chr_eval;
  bool chr_info = false;
  chr->add_option("--spec", chr_spec, "character spec q=..;e=..")->required();
  chr->add_option("--eval", chr_eval, "evaluate at n");
  chr->add_flag("--info", chr_info, "print order/parity/conductor/labels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify(suite, caps_path, threads);
    if (*calib) return cmd_calibrate(calib_out);
    if (*scan) {
      if (order_flag) cfg.order = order_flag;
      if (!parity_str.empty()) {
        if (parity_str == "odd")
          cfg.parity = -1;
        else if (parity_str == "even")
          cfg.parity = 1;
        else
          throw ConfigError("scan: --parity must be odd or even");
      }
      cfg.eps_tokens.clear();
      std::stringstream ss(eps_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) cfg.eps_tokens.push_back(tok);
      cfg.threads = threads;
      if (out_path.empty()) {
        run_scan(cfg, std::cout);
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file " + out_path);
        run_scan(cfg, f);
      }
      return 0;
    }
    if (*explore) {
      if (ex_T >= 0) ex.T = ex_T;
      if (ex_out.empty()) {
        run_explore(ex, std::cout);
      } else {
        std::ofstream f(ex_out, std::ios::binary);
        if (!f) throw ConfigError("cannot open output file " + ex_out);
        run_explore(ex, f);
      }
      return 0;
    }
    if (*chr) return cmd_char(chr_spec, chr_info, chr_eval);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
