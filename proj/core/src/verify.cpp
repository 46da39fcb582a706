#include "trifilt/verify.hpp"

#include <algorithm>
#include <sstream>

#include "trifilt/filtration.hpp"
#include "trifilt/io.hpp"
#include "trifilt/oracle.hpp"
#include "trifilt/scanner.hpp"

namespace trifilt::verify {

std::size_t VerifyReport::mismatches() const {
  std::size_t n = 0;
  for (const auto& c : checks)
    if (!c.ok) ++n;
  return n;
}

std::pair<PointCloud, BiFunction> truncate(const PointCloud& cloud, const BiFunction& f, std::size_t count) {
  count = std::min(count, cloud.num_data());
  std::vector<Coords> data(cloud.data().begin(), cloud.data().begin() + static_cast<std::ptrdiff_t>(count));
  std::vector<Coords> frame;
  for (PointId p : cloud.frame_ids()) frame.push_back(cloud[p]);
  std::vector<Value2> values;
  for (std::size_t i = 0; i < count; ++i) values.push_back(f.value(static_cast<PointId>(i)));
  auto fv = with_frame_values(values, frame.size());
  return {PointCloud(cloud.dim(), std::move(data), std::move(frame)), std::move(fv)};
}

namespace {

std::string betti_string(const std::vector<int>& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + ")";
}

}  // namespace

EquivalenceReport verify_equivalence(const PointCloud& cloud, const BiFunction& f, std::size_t sample_count,
                                     std::uint64_t seed) {
  const int dim = cloud.dim();
  const auto incr = compute_incr(cloud, f, Strategy::Local);
  const auto births = compute_births(incr, cloud, f, {.keep_exact = true});

  std::vector<PointId> data_ids(cloud.num_data());
  for (std::size_t i = 0; i < data_ids.size(); ++i) data_ids[i] = static_cast<PointId>(i);
  const auto cech_table = oracle::miniball_table(cloud, data_ids, dim + 1);

  std::vector<Rational> critical{Rational(0)};
  for (const auto& [s, r2] : cech_table) critical.push_back(r2);
  for (int k = 0; k <= incr.max_dim(); ++k)
    for (SimplexStore::Index i = 0; i < incr.level(k).size(); ++i) {
      critical.push_back(births.omega_sq(k, i));
      critical.push_back(births.m_sq(k, i));
    }
  std::sort(critical.begin(), critical.end());
  critical.erase(std::unique(critical.begin(), critical.end()), critical.end());
  std::vector<Rational> radii = critical;
  for (std::size_t i = 0; i + 1 < critical.size(); ++i) radii.push_back((critical[i] + critical[i + 1]) / 2);
  radii.push_back(critical.back() + 1);

  io::UniformSource rng(seed);
  auto pick = [&](std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(rng.next() * static_cast<double>(n))); };

  EquivalenceReport report;
  const auto n = static_cast<Rank>(cloud.size());
  for (std::size_t sample = 0; sample < sample_count; ++sample) {
    const GridIndex p{static_cast<Rank>(pick(static_cast<std::size_t>(n))), static_cast<Rank>(pick(static_cast<std::size_t>(n)))};
    const Rational& r2 = radii[pick(radii.size())];

    std::vector<Simplex> del, delcech, cech;
    for (int k = 0; k <= incr.max_dim(); ++k) {
      const auto level = incr.level(k);
      for (SimplexStore::Index i = 0; i < level.size(); ++i) {
        if (!f.join(level[i]).leq(p)) continue;
        if (births.omega_sq(k, i) <= r2) del.push_back(level[i]);
        if (births.m_sq(k, i) <= r2) delcech.push_back(level[i]);
      }
    }
    for (const auto& [s, m2] : cech_table)
      if (m2 <= r2 && f.join(s).leq(p)) cech.push_back(s);

    const auto b_cech = oracle::betti(cech, dim);
    const auto b_del = oracle::betti(del, dim);
    const auto b_delcech = oracle::betti(delcech, dim);
    ++report.samples;
    auto note = [&](const char* which, const std::vector<int>& b) {
      std::ostringstream os;
      os << which << " at p=(" << p.r1 << "," << p.r2 << ") r^2=" << r2.get_str() << ": " << betti_string(b)
         << " vs cech " << betti_string(b_cech);
      report.mismatches.push_back(os.str());
    };
    if (b_del != b_cech) note("del", b_del);
    if (b_delcech != b_cech) note("delcech", b_delcech);
  }
  return report;
}

VerifyReport run_checks(const PointCloud& full_cloud, const BiFunction& full_f, const VerifyOptions& options) {
  const auto [cloud, f] = truncate(full_cloud, full_f, options.max_points);
  VerifyReport report;
  report.points_used = cloud.num_data();
  const int dim = cloud.dim();

  const auto incr = compute_incr(cloud, f, Strategy::Local);
  const auto births = compute_births(incr, cloud, f, {.keep_exact = true});

  {
    Check c;
    c.name = "incremental complex matches witness enumeration";
    const auto brute = oracle::brute_incr(cloud, f);
    const auto mine = incr.all();
    c.ok = brute == mine;
    c.detail = std::to_string(mine.size()) + " simplices, oracle " + std::to_string(brute.size());
    report.checks.push_back(std::move(c));
  }

  const bool scanned = cloud.num_data() > static_cast<std::size_t>(dim) + 1;
  {
    Check c;
    c.name = "naive, nonlocal and local scans agree";
    if (!scanned) {
      c.skipped = true;
      c.detail = "too few points for the scan";
    } else {
      const auto a = scan(cloud, f, Strategy::Naive);
      const auto b = scan(cloud, f, Strategy::NonLocal);
      const auto l = scan(cloud, f, Strategy::Local);
      c.ok = a == b && b == l && derive_triples(a) == derive_triples(l);
      c.detail = std::to_string(l.num_pairs()) + " conflict pairs";
    }
    report.checks.push_back(std::move(c));
  }
  {
    Check c;
    c.name = "conflict pairs and triples match the grid definition";
    if (!scanned || cloud.size() > 64) {
      c.skipped = true;
      c.detail = scanned ? "more than 64 points" : "too few points for the scan";
    } else {
      const auto ledger = scan(cloud, f, Strategy::Local);
      const auto def = oracle::definitional_conflicts(cloud, f);
      const auto canon = ledger.canonical();
      const std::vector<std::pair<Simplex, std::vector<PointId>>> expected(def.pairs.begin(), def.pairs.end());
      std::vector<std::pair<Simplex, std::pair<PointId, PointId>>> triples;
      for (const auto& t : derive_triples(ledger)) triples.push_back({t.cell, {t.x, t.y}});
      c.ok = canon == expected && triples == def.triples;
      c.detail = std::to_string(triples.size()) + " triples, oracle " + std::to_string(def.triples.size());
    }
    report.checks.push_back(std::move(c));
  }
  {
    Check c;
    c.name = "radii match the exact oracles";
    std::size_t bad = 0, total = 0;
    for (int k = 0; k <= incr.max_dim(); ++k) {
      const auto level = incr.level(k);
      for (SimplexStore::Index i = 0; i < level.size(); ++i) {
        ++total;
        const bool ok = births.omega_sq(k, i) == oracle::brute_omega(cloud, f, level[i]) &&
                        births.m_sq(k, i) == oracle::brute_miniball_sq(cloud, level[i]) &&
                        births.m_sq(k, i) <= births.omega_sq(k, i);
        if (!ok) {
          if (bad == 0) c.detail = "first mismatch at " + level[i].to_string() + "; ";
          ++bad;
        }
      }
    }
    c.ok = bad == 0;
    c.detail += std::to_string(bad) + " of " + std::to_string(total) + " simplices differ";
    report.checks.push_back(std::move(c));
  }
  {
    Check c;
    c.name = "frame lies outside every witness sphere";
    std::size_t bad = 0;
    const auto frame = cloud.frame_ids();
    for (int k = 0; k <= incr.max_dim(); ++k) {
      for (SimplexStore::Index i = 0; i < incr.level(k).size(); ++i) {
        if (!births.at(k, i).gabriel) continue;
        const auto g = is_incr_gabriel(incr, k, i, cloud, f);
        for (PointId p : frame)
          if (geom::side_of(dim, g.sphere, cloud[p]) != geom::Side::Outside) ++bad;
      }
    }
    c.ok = bad == 0;
    c.detail = std::to_string(bad) + " violations";
    report.checks.push_back(std::move(c));
  }
  {
    Check c;
    c.name = "homology matches the Cech complex";
    const auto eq = verify_equivalence(cloud, f, options.samples, options.seed);
    c.ok = eq.mismatches.empty();
    c.detail = std::to_string(eq.samples) + " samples, " + std::to_string(eq.mismatches.size()) + " mismatches";
    if (!eq.mismatches.empty()) c.detail += "; " + eq.mismatches.front();
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace trifilt::verify
