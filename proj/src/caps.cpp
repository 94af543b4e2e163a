#include "charlab/caps.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <ctime>

#include <json.hpp>

#include "charlab/convolution.hpp"
#include "charlab/families.hpp"
#include "charlab/parallel.hpp"
#include "charlab/sums.hpp"

namespace charlab {

namespace {

std::string canonical(const std::vector<CapEntry>& entries) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& e : entries)
    os << e.name << "=" << e.value << ";raw=" << e.raw << ";headroom=" << e.headroom << ";"
       << e.family << ";" << e.worst_case << "\n";
  return os.str();
}

}  // namespace

const CapEntry& Caps::get(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw ConfigError("caps file is missing constant '" + name + "'");
}

u64 Caps::hash() const { return fnv1a(canonical(entries)); }

void Caps::save(const std::string& path) const {
  nlohmann::ordered_json j;
  j["constants"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json c;
    c["constant"] = e.name;
    c["value"] = e.value;
    c["raw"] = e.raw;
    c["headroom"] = e.headroom;
    c["family"] = e.family;
    c["worst_case"] = e.worst_case;
    j["constants"].push_back(c);
  }
  std::ostringstream h;
  h << std::hex << hash();
  j["hash"] = h.str();
  // provenance timestamp; not part of the hash so reruns stay comparable
  char date[32];
  std::time_t now = std::time(nullptr);
  std::strftime(date, sizeof date, "%Y-%m-%d", std::gmtime(&now));
  j["generated"] = date;
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write caps file '" + path + "'");
  f << j.dump(2) << "\n";
}

Caps Caps::load(const std::string& path) {
  std::ifstream f(path);
  if (!f)
    throw ConfigError("caps file '" + path + "' not found; run `charlab calibrate` first");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw ConfigError("caps file '" + path + "' is not valid JSON: " + e.what());
  }
  Caps caps;
  for (const auto& c : j.at("constants")) {
    CapEntry e;
    e.name = c.at("constant").get<std::string>();
    e.value = c.at("value").get<double>();
    e.raw = c.value("raw", 0.0);
    e.headroom = c.value("headroom", 0.5);
    e.family = c.value("family", "");
    e.worst_case = c.value("worst_case", "");
    caps.entries.push_back(std::move(e));
  }
  std::ostringstream h;
  h << std::hex << caps.hash();
  if (j.value("hash", "") != h.str())
    throw ConfigError("caps file '" + path + "' failed its hash check (tampered or stale)");
  return caps;
}

Caps calibrate(std::ostream* progress) {
  Caps caps;
  auto log = [&](const std::string& s) {
    if (progress) *progress << s << "\n";
  };

  {
    log("calibrating C_P over primitive characters, 3 <= q <= 300");
    auto fam = primitive_family(3, 300);
    std::vector<double> ratio(fam.size());
    parallel_for(fam.size(), 0, [&](size_t i) {
      ratio[i] = polya_expansion_error(fam[i]).sup_error / std::log((double)fam[i].modulus());
    });
    double worst = 0;
    size_t wi = 0;
    for (size_t i = 0; i < ratio.size(); ++i)
      if (ratio[i] > worst) worst = ratio[i], wi = i;
    CapEntry e;
    e.name = "C_P";
    e.raw = worst;
    e.value = worst * 1.5;
    e.family = "primitive characters, 3 <= q <= 300, expansion truncated at |n| <= q";
    e.worst_case = fam[wi].label() + " ratio " + std::to_string(worst);
    caps.entries.push_back(e);
  }

  {
    log("calibrating C_E over primitive quadratic/cubic characters, q <= 200");
    auto fam = equiv_family();
    std::vector<double> gaps(fam.size());
    parallel_for(fam.size(), 0, [&](size_t i) {
      MultiplicativeModel m = MultiplicativeModel::from_character(fam[i], 10'000);
      gaps[i] = equiv_gap(m, 10'000, 10.0, fam[i].order()).gap;
    });
    double worst = 1e300;
    size_t wi = 0;
    for (size_t i = 0; i < gaps.size(); ++i)
      if (gaps[i] < worst) worst = gaps[i], wi = i;
    CapEntry e;
    e.name = "C_E";
    e.raw = worst;
    e.value = worst < 0 ? -worst * 1.5 : 0.0;
    e.family = "primitive order-2/3 characters, q <= 200, x = 1e4, T = 10, zeros mapped to 1";
    e.worst_case = fam[wi].label() + " gap " + std::to_string(worst);
    caps.entries.push_back(e);
  }

  {
    log("calibrating c_R and c_H over the mean-value family");
    auto fam = mean_value_family();
    std::vector<double> rr(fam.size()), hh(fam.size());
    parallel_for(fam.size(), 0, [&](size_t i) {
      MultiplicativeModel m = MultiplicativeModel::from_character(fam[i], 100'000);
      rr[i] = revtonn_check(m, 100'000).ratio;
      hh[i] = hildebrand_lower(m, 100'000).ratio;
    });
    double wr = 1e300, wh = 1e300;
    size_t ri = 0, hi = 0;
    for (size_t i = 0; i < fam.size(); ++i) {
      if (rr[i] < wr) wr = rr[i], ri = i;
      if (hh[i] < wh) wh = hh[i], hi = i;
    }
    CapEntry er;
    er.name = "c_R";
    er.raw = wr;
    er.value = wr / 1.5;
    er.family = "12 smallest primitive characters of order 2..6, q <= 50, t = 1e5";
    er.worst_case = fam[ri].label() + " ratio " + std::to_string(wr);
    caps.entries.push_back(er);

    CapEntry eh;
    eh.name = "c_H";
    eh.raw = wh;
    eh.value = wh / 1.5;
    eh.family = "12 smallest primitive characters of order 2..6, q <= 50, x = 1e5";
    eh.worst_case = fam[hi].label() + " ratio " + std::to_string(wh);
    caps.entries.push_back(eh);
  }

  return caps;
}

}  // namespace charlab
