#include "charlab/scan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>

#include "charlab/families.hpp"
#include "charlab/parallel.hpp"
#include "charlab/pretentious.hpp"
#include "charlab/sums.hpp"

namespace charlab {

namespace {

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Spearman rank correlation with average ranks on ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  size_t n = a.size();
  if (n < 2) return std::nan("");
  auto ranks = [](const std::vector<double>& v) {
    size_t n = v.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return v[i] < v[j]; });
    std::vector<double> r(n);
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      double avg = ((double)i + (double)j) / 2.0 + 1.0;
      for (size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  std::vector<double> ra = ranks(a), rb = ranks(b);
  double ma = 0, mb = 0;
  for (size_t i = 0; i < n; ++i) ma += ra[i], mb += rb[i];
  ma /= (double)n;
  mb /= (double)n;
  double num = 0, da = 0, db = 0;
  for (size_t i = 0; i < n; ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  if (da == 0 || db == 0) return std::nan("");
  return num / std::sqrt(da * db);
}

}  // namespace

std::vector<double> ScanConfig::eps_values() const {
  std::vector<double> v;
  for (const auto& t : eps_tokens) v.push_back(std::stod(t));
  return v;
}

std::string ScanConfig::canonical_string() const {
  std::ostringstream os;
  os << "command=scan;qmin=" << qmin << ";qmax=" << qmax;
  os << ";order=" << (order ? std::to_string(*order) : "any");
  os << ";parity=" << (parity ? (*parity < 0 ? "odd" : "even") : "any");
  os << ";eps=";
  for (size_t i = 0; i < eps_tokens.size(); ++i) os << (i ? "," : "") << eps_tokens[i];
  os << ";twist_T=" << g12(twist_T) << ";seed=" << seed << ";prime_q=" << (prime_q ? 1 : 0)
     << ";timings=" << (timings ? 1 : 0);
  return os.str();
}

u64 ScanConfig::hash() const { return fnv1a(canonical_string()); }

void run_scan(const ScanConfig& cfg, std::ostream& out) {
  if (cfg.qmin < 1 || cfg.qmax < cfg.qmin) throw ConfigError("scan: bad q range");
  if (cfg.qmax > cfg.q_cap)
    throw ResourceError("scan: qmax exceeds the dense per-character limit; raise --q-cap "
                        "after checking memory (16 bytes per residue per worker)");
  std::vector<double> eps = cfg.eps_values();
  for (double e : eps)
    if (!(e > 0 && e <= 1)) throw ConfigError("scan: eps values must lie in (0, 1]");

  CharacterFilter filt;
  filt.primitive_only = true;
  filt.order = cfg.order;
  filt.parity = cfg.parity;

  std::vector<DirichletCharacter> chis;
  for (u64 q = cfg.qmin; q <= cfg.qmax; ++q) {
    if (cfg.prime_q && !is_prime(q)) continue;
    for (auto& chi : enumerate_characters(q, filt)) {
      if (chi.is_principal()) continue;
      chis.push_back(std::move(chi));
    }
  }

  struct Row {
    std::string label;
    u64 q = 0, order = 0;
    int parity = 0;
    double pv_max = 0, a_q = 0;
    u64 nchi = 0;
    std::vector<double> delta;
    double d0_sq = 0;
    u64 twist_cond = 0, twist_order = 0;
    double twist_dist = -1;
    double runtime_ms = 0;
  };
  std::vector<Row> rows(chis.size());

  parallel_for(chis.size(), cfg.threads, [&](size_t i) {
    auto t0 = std::chrono::steady_clock::now();
    const DirichletCharacter& chi = chis[i];
    Row& r = rows[i];
    r.label = chi.label();
    r.q = chi.modulus();
    r.order = chi.order();
    r.parity = chi.parity();

    SavingsProfile prof = savings_profile(chi, eps);
    r.pv_max = prof.pv_max;
    r.a_q = prof.a_q;
    r.nchi = prof.nchi.value_or(0);
    r.delta = prof.delta_eps;

    MultiplicativeModel m = MultiplicativeModel::from_character(chi, r.q);
    MultiplicativeModel ones = MultiplicativeModel::one(r.q);
    r.d0_sq = distance(m, ones, (double)r.q);

    auto scan = twist_scan(chi, cfg.twist_T);
    for (const auto& e : scan) {
      if (r.twist_dist < 0 || e.dist < r.twist_dist) {
        r.twist_dist = e.dist;
        r.twist_cond = e.conductor;
        r.twist_order = e.order;
      }
    }
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  });

  // header: config hash, then the fixed schema
  {
    std::ostringstream h;
    h << std::hex << cfg.hash();
    out << "# charlab scan config_hash=" << h.str() << " config=" << cfg.canonical_string()
        << "\n";
  }
  out << "q,label,order,parity,pv_max,a_q,n_chi";
  for (const auto& t : cfg.eps_tokens) out << ",delta_" << t;
  out << ",d0_sq,twist_cond,twist_order,twist_dist,runtime_ms\n";

  for (const auto& r : rows) {
    out << r.q << ',' << csv_field(r.label) << ',' << r.order << ',' << r.parity << ','
        << g12(r.pv_max) << ',' << g12(r.a_q) << ',' << r.nchi;
    for (double d : r.delta) out << ',' << g12(d);
    out << ',' << g12(r.d0_sq) << ',' << r.twist_cond << ',' << r.twist_order << ','
        << g12(r.twist_dist) << ',' << (cfg.timings ? g12(r.runtime_ms) : "0") << "\n";
  }

  // footer: aggregate stats, Spearman rank correlation of a_q against each delta
  out << "# rows=" << rows.size() << "\n";
  std::vector<double> aq;
  for (const auto& r : rows) aq.push_back(r.a_q);
  if (cfg.order && *cfg.order >= 2 && !aq.empty()) {
    std::vector<double> sorted = aq;
    std::sort(sorted.begin(), sorted.end());
    double med = sorted[sorted.size() / 2];
    if (med > std::exp(std::exp(1.0)))
      out << "# thmgen_shape order=" << *cfg.order << " median_a_q=" << g12(med)
          << " rhs=" << g12(thmgen_rhs(*cfg.order, med)) << "\n";
    else
      out << "# thmgen_shape order=" << *cfg.order << " median_a_q=" << g12(med)
          << " rhs=na (a <= e^e)\n";
  }
  for (size_t e = 0; e < cfg.eps_tokens.size(); ++e) {
    std::vector<double> d;
    for (const auto& r : rows) d.push_back(r.delta[e]);
    double rho = spearman(aq, d);
    out << "# spearman a_q vs delta_" << cfg.eps_tokens[e] << "="
        << (std::isnan(rho) ? std::string("nan") : g12(rho)) << "\n";
  }
}

}  // namespace charlab
