#include "charlab/explore.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

#include "charlab/convolution.hpp"
#include "charlab/pretentious.hpp"

namespace charlab {

namespace {

using njson = nlohmann::ordered_json;

MultiplicativeModel model_from_args(const ExploreArgs& a, u64 prime_limit, u64* order_out) {
  if (!a.char_spec.empty()) {
    DirichletCharacter chi = DirichletCharacter::parse(a.char_spec);
    if (order_out) *order_out = chi.order();
    return MultiplicativeModel::from_character(chi, prime_limit);
  }
  if (a.synthetic == "minus-one") {
    if (order_out) *order_out = 2;
    return MultiplicativeModel::constant_root(UnitValue::root(1, 2), prime_limit);
  }
  if (a.synthetic.rfind("root:", 0) == 0) {
    std::string frac = a.synthetic.substr(5);
    size_t slash = frac.find('/');
    if (slash == std::string::npos)
      throw ConfigError("explore: expected --synthetic root:a/m");
    i64 num = std::stoll(frac.substr(0, slash));
    i64 den = std::stoll(frac.substr(slash + 1));
    UnitValue v = UnitValue::root(num, den);
    if (order_out) *order_out = (u64)v.den;
    return MultiplicativeModel::constant_root(v, prime_limit);
  }
  if (a.synthetic.rfind("twist:", 0) == 0) {
    if (order_out) *order_out = 0;
    return MultiplicativeModel::twisted(std::stod(a.synthetic.substr(6)), prime_limit);
  }
  throw ConfigError("explore: supply --char q=..;e=.. or --synthetic minus-one|root:a/m|twist:t");
}

njson twist_json(const TwistEntry& e) {
  njson j;
  j["conductor"] = e.conductor;
  j["order"] = e.order;
  j["label"] = e.label;
  j["dist"] = e.dist;
  j["threshold"] = e.threshold;
  j["below"] = e.below;
  return j;
}

}  // namespace

void run_explore(const ExploreArgs& args, std::ostream& out) {
  njson j;
  j["target"] = args.target;

  if (args.target == "cestolog") {
    u64 k = 0;
    XiFamily xi = XiFamily::parse(args.xi);
    MultiplicativeModel f = model_from_args(args, args.x, &k);
    if (k < 2) throw ConfigError("explore cestolog: model must have a finite order >= 2");
    CestologReport rep = cestolog_report(f, k, args.x, xi);
    j["x"] = rep.x;
    j["k"] = rep.k;
    j["xi"] = xi.name();
    j["xi_x"] = rep.xi_x;
    j["mean"] = rep.mean;
    j["hypothesis"] = rep.hypothesis;
    j["lhs"] = rep.lhs;
    j["rhs_a"] = rep.rhs_a;
    j["log10_rhs_a"] = rep.log10_rhs_a;
    j["ratio_a"] = std::isfinite(rep.ratio_a) ? njson(rep.ratio_a) : njson("inf");
    if (rep.rhs_b) {
      j["rhs_b"] = *rep.rhs_b;
      j["log10_rhs_b"] = *rep.log10_rhs_b;
      j["ratio_b"] = *rep.ratio_b;
    }
  } else if (args.target == "hmt") {
    double T = args.T.value_or(std::pow(std::log((double)args.x), 2.0));
    MultiplicativeModel f = model_from_args(args, args.x, nullptr);
    HmtResult r = hmt_bound(f, args.x, T);
    j["x"] = args.x;
    j["T"] = T;
    j["d0_squared"] = r.dist.d0_squared;
    j["t_star"] = r.dist.t_star;
    j["d_min_squared"] = r.dist.d_min_squared;
    j["lambda"] = r.dist.lambda;
    j["eta"] = r.dist.eta;
    j["bound"] = r.bound;
    j["mean"] = r.mean;
    j["ratio"] = r.ratio;
  } else if (args.target == "orders") {
    if (args.q == 0) throw ConfigError("explore orders: --q required");
    CharacterFilter filt;
    filt.primitive_only = true;
    filt.order = args.order;
    auto chis = enumerate_characters(args.q, filt);
    if (chis.empty()) throw ConfigError("explore orders: no matching primitive character");
    const DirichletCharacter& chi = chis.front();
    double T = args.T.value_or(1.0);
    j["chi"] = chi.label();
    j["q"] = chi.modulus();
    j["g"] = chi.order();
    j["T"] = T;
    if (!args.psi_spec.empty()) {
      DirichletCharacter psi = DirichletCharacter::parse(args.psi_spec);
      OrdersReport rep = orders_report(chi, psi, T);
      j["pair"] = twist_json(rep.pair);
      j["k_divides_g"] = rep.k_divides_g;
      j["dichotomy_violated"] = rep.dichotomy_violated;
      j["conductor_warning"] = rep.conductor_warning;
      j["count_below"] = rep.count_below;
      if (rep.nearest) j["nearest"] = twist_json(*rep.nearest);
      njson arr = njson::array();
      for (const auto& e : rep.scanned) arr.push_back(twist_json(e));
      j["scanned"] = arr;
    } else {
      auto scan = twist_scan(chi, T);
      int below = 0;
      std::optional<TwistEntry> nearest;
      njson arr = njson::array();
      for (const auto& e : scan) {
        if (e.below) ++below;
        if (!nearest || e.dist < nearest->dist) nearest = e;
        arr.push_back(twist_json(e));
      }
      j["count_below"] = below;
      if (nearest) j["nearest"] = twist_json(*nearest);
      j["scanned"] = arr;
    }
  } else if (args.target == "hildebrand") {
    MultiplicativeModel f = model_from_args(args, args.x, nullptr);
    HildebrandResult r = hildebrand_lower(f, args.x);
    j["x"] = args.x;
    j["lower"] = r.lower;
    j["actual"] = r.actual;
    j["ratio"] = r.ratio;
  } else {
    throw ConfigError("explore: unknown target '" + args.target +
                      "' (expected cestolog | hmt | orders | hildebrand)");
  }

  out << j.dump(2) << "\n";
}

}  // namespace charlab
