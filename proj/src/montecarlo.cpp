#include "wavetr/montecarlo.hpp"

#include "wavetr/homogeneous.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <thread>

namespace wavetr {

namespace {

// 4x4 linear solve, Gaussian elimination with partial pivoting.
bool solve4(double a[4][5]) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) return false;
    if (piv != col)
      for (int c = 0; c <= 4; ++c) std::swap(a[piv][c], a[col][c]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c <= 4; ++c) a[r][c] -= f * a[col][c];
    }
  }
  for (int r = 0; r < 4; ++r) a[r][4] /= a[r][r];
  return true;
}

}  // namespace

PeakFit fit_peak(const RealField& field) {
  PeakFit out;
  const TransverseGrid& g = field.grid();
  int pix = 0, piy = 0;
  double vmax = -1;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix)
      if (field.at(ix, iy) > vmax) {
        vmax = field.at(ix, iy);
        pix = ix;
        piy = iy;
      }
  std::vector<double> sorted(field.data(), field.data() + field.size());
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (!(vmax > 0) || !(vmax > 2.0 * median)) return out;  // no dominant peak

  // Initial width from the half-maximum crossing along the four axis rays.
  double hwhm_acc = 0;
  int hwhm_cnt = 0;
  auto scan = [&](int dx, int dy) {
    for (int s = 1; s < g.n / 2; ++s) {
      const int ix = pix + s * dx, iy = piy + s * dy;
      if (ix < 0 || ix >= g.n || iy < 0 || iy >= g.n) return;
      if (field.at(ix, iy) < 0.5 * vmax) {
        hwhm_acc += s * g.spacing;
        ++hwhm_cnt;
        return;
      }
    }
  };
  scan(1, 0);
  scan(-1, 0);
  scan(0, 1);
  scan(0, -1);
  double w0 = hwhm_cnt ? (hwhm_acc / hwhm_cnt) / 1.17741002251547 : g.spacing;
  w0 = std::max(w0, 0.8 * g.spacing);

  const double cx0 = g.coord(pix), cy0 = g.coord(piy);
  const double half = std::max(3.0 * w0, 2.0 * g.spacing);  // 6 w0 window

  // Weighted LSQ of ln v = c0 + c1 x + c2 y + c3 (x^2 + y^2), weights v^2.
  double m[4][5] = {};
  int used = 0;
  const int iw = static_cast<int>(std::ceil(half / g.spacing)) + 1;
  for (int iy = std::max(0, piy - iw); iy <= std::min(g.n - 1, piy + iw); ++iy)
    for (int ix = std::max(0, pix - iw); ix <= std::min(g.n - 1, pix + iw); ++ix) {
      const double x = g.coord(ix) - cx0, y = g.coord(iy) - cy0;
      if (x * x + y * y > half * half) continue;
      const double v = field.at(ix, iy);
      if (!(v > 1e-3 * vmax)) continue;
      const double w = v * v;
      const double row[4] = {1.0, x, y, x * x + y * y};
      const double rhs = std::log(v);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m[i][j] += w * row[i] * row[j];
        m[i][4] += w * row[i] * rhs;
      }
      ++used;
    }
  if (used < 6 || !solve4(m)) return out;
  const double c1 = m[1][4], c2 = m[2][4], c3 = m[3][4];
  if (!(c3 < 0)) return out;
  const double relx = -c1 / (2.0 * c3), rely = -c2 / (2.0 * c3);
  out.found = true;
  out.center = {cx0 + relx, cy0 + rely};
  out.width = std::sqrt(-1.0 / (2.0 * c3));
  out.amplitude = std::exp(m[0][4] - c3 * (relx * relx + rely * rely));
  return out;
}

ProbeSet default_probes(const ExperimentConfig& cfg) {
  double rtr = moments::peak_width_rtr(moments::make_params(cfg));
  if (!std::isfinite(rtr)) rtr = 4.0 * cfg.grid.spacing;
  ProbeSet ps;
  ps.x_offsets = {{0, 0}, {rtr, 0}, {4.0 * rtr, 0}};
  ps.h_offsets = {{0, 0}};
  for (double f : {0.5, 1.0, 2.0, 4.0}) {
    ps.h_offsets.push_back({f * rtr, 0});
    ps.h_offsets.push_back({0, f * rtr});
  }
  return ps;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PARAXIAL_TR_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

namespace {

struct ProbeIdx {
  int ixp, iyp, ixm, iym;
  Vec2 x, h;  // actual offsets after snapping
};

struct Partial {
  std::vector<cplx> sum_u;
  std::vector<double> sum_abs2;
  std::vector<cplx> probe_sum;
  std::vector<double> probe_abs2;
  void init(std::size_t npts, std::size_t nprobes) {
    sum_u.assign(npts, cplx{});
    sum_abs2.assign(npts, 0.0);
    probe_sum.assign(nprobes, cplx{});
    probe_abs2.assign(nprobes, 0.0);
  }
  void merge(const Partial& o) {
    for (std::size_t i = 0; i < sum_u.size(); ++i) sum_u[i] += o.sum_u[i];
    for (std::size_t i = 0; i < sum_abs2.size(); ++i) sum_abs2[i] += o.sum_abs2[i];
    for (std::size_t i = 0; i < probe_sum.size(); ++i) probe_sum[i] += o.probe_sum[i];
    for (std::size_t i = 0; i < probe_abs2.size(); ++i) probe_abs2[i] += o.probe_abs2[i];
  }
};

}  // namespace

EnsembleStats run_ensemble(const ExperimentConfig& cfg, int n, const EnsembleOptions& opts) {
  if (n < 2) throw ValidationError("n_realizations", "ensemble needs n >= 2");
  cfg.validate();
  const int threads = std::max(1, std::min(resolve_threads(opts.threads), n));

  const ProbeSet probe_req =
      (opts.probes.x_offsets.empty() && opts.probes.h_offsets.empty()) ? default_probes(cfg)
                                                                       : opts.probes;
  const TransverseGrid& g = cfg.grid;
  const Vec2 y = cfg.source_offset;
  std::vector<ProbeIdx> probes;
  for (const Vec2& x : probe_req.x_offsets)
    for (const Vec2& h : probe_req.h_offsets) {
      ProbeIdx pi;
      pi.ixp = g.index_near(y.x + x.x + 0.5 * h.x);
      pi.iyp = g.index_near(y.y + x.y + 0.5 * h.y);
      pi.ixm = g.index_near(y.x + x.x - 0.5 * h.x);
      pi.iym = g.index_near(y.y + x.y - 0.5 * h.y);
      const Vec2 plus = g.point(pi.ixp, pi.iyp), minus = g.point(pi.ixm, pi.iym);
      pi.x = 0.5 * (plus + minus) - y;
      pi.h = plus - minus;
      probes.push_back(pi);
    }

  const std::size_t n_stats = opts.per_realization_stats.size();
  std::vector<std::vector<double>> custom(n_stats, std::vector<double>(n, 0.0));

  constexpr int kBlock = 8;
  const int n_blocks = (n + kBlock - 1) / kBlock;
  Partial global;
  global.init(g.size(), probes.size());

  std::atomic<int> next_block{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::condition_variable cv;
  int merge_next = 0;
  std::map<int, Partial> pending;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      const int bi = next_block.fetch_add(1);
      if (bi >= n_blocks || failed.load()) return;
      Partial part;
      part.init(g.size(), probes.size());
      try {
        const int lo = bi * kBlock, hi = std::min(n, lo + kBlock);
        for (int i = lo; i < hi; ++i) {
          MediumRealization realz;
          try {
            realz = make_realization(cfg.medium, g, cfg.L, cfg.n_steps, cfg.master_seed,
                                     static_cast<std::uint64_t>(i));
          } catch (const std::exception& e) {
            throw std::runtime_error("realization " + std::to_string(i) + ": " + e.what());
          }
          RefocusedField rf;
          try {
            rf = run_experiment(cfg, realz, static_cast<std::uint64_t>(i));
          } catch (const std::exception& e) {
            throw std::runtime_error("realization " + std::to_string(i) + ": " + e.what());
          }
          const cplx* u = rf.u_tr.data();
          for (std::size_t k = 0; k < part.sum_u.size(); ++k) {
            part.sum_u[k] += u[k];
            part.sum_abs2[k] += std::norm(u[k]);
          }
          for (std::size_t k = 0; k < probes.size(); ++k) {
            const cplx p = rf.u_tr.at(probes[k].ixp, probes[k].iyp) *
                           std::conj(rf.u_tr.at(probes[k].ixm, probes[k].iym));
            part.probe_sum[k] += p;
            part.probe_abs2[k] += std::norm(p);
          }
          for (std::size_t s = 0; s < n_stats; ++s)
            custom[s][static_cast<std::size_t>(i)] = opts.per_realization_stats[s].second(rf);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lk(mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        cv.notify_all();
        return;
      }
      std::unique_lock<std::mutex> lk(mu);
      cv.wait(lk, [&] {
        return failed.load() || pending.size() < static_cast<std::size_t>(2 * threads + 4) ||
               bi == merge_next;
      });
      if (failed.load()) return;
      pending.emplace(bi, std::move(part));
      while (true) {
        auto it = pending.find(merge_next);
        if (it == pending.end()) break;
        global.merge(it->second);
        pending.erase(it);
        ++merge_next;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  EnsembleStats st;
  st.n = n;
  st.mean_field = ComplexField(g);
  st.second_abs = RealField(g);
  st.variance_field = RealField(g);
  st.se_mean_field = RealField(g);
  const double invn = 1.0 / n;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const cplx mean = global.sum_u[k] * invn;
    const double second = global.sum_abs2[k] * invn;
    double var = second - std::norm(mean);
    if (var < 0) {
      st.variance_clipped = true;
      var = 0;
    }
    st.mean_field.data()[k] = mean;
    st.second_abs.data()[k] = second;
    st.variance_field.data()[k] = var;
    st.se_mean_field.data()[k] = std::sqrt(var * invn);
  }
  for (std::size_t k = 0; k < probes.size(); ++k) {
    SecondMomentProbe pr;
    pr.x = probes[k].x;
    pr.h = probes[k].h;
    pr.mean = global.probe_sum[k] * invn;
    const double var = std::max(0.0, global.probe_abs2[k] * invn - std::norm(pr.mean));
    pr.se = std::sqrt(var * invn);
    st.probes.push_back(pr);
  }
  RealField absmean(g);
  for (std::size_t k = 0; k < g.size(); ++k)
    absmean.data()[k] = std::abs(st.mean_field.data()[k]);
  st.peak = fit_peak(absmean);
  for (std::size_t s = 0; s < n_stats; ++s)
    st.custom.emplace_back(opts.per_realization_stats[s].first, std::move(custom[s]));
  return st;
}

ComparisonReport compare(const EnsembleStats& stats, const ExperimentConfig& cfg,
                         const CompareOptions& opts) {
  if (!(stats.mean_field.grid() == cfg.grid))
    throw ValidationError("grid", "stats were computed on a different grid");
  ComparisonReport rep;
  auto params = moments::make_params(cfg);
  const TransverseGrid& g = cfg.grid;
  const Vec2 y = cfg.source_offset;
  const bool homogeneous = cfg.medium.sigma == 0.0;

  double rtr = moments::peak_width_rtr(params);
  if (!std::isfinite(rtr)) rtr = 2.0 * cfg.mirror.rho0;
  const double rdisk = opts.profile_radius_rtr * rtr;

  // Collect grid points of the profile disk around the source.
  struct DiskPoint {
    int ix, iy;
    Vec2 offset;
  };
  std::vector<DiskPoint> disk;
  const int icx = g.index_near(y.x), icy = g.index_near(y.y);
  const int irad = static_cast<int>(std::ceil(rdisk / g.spacing)) + 1;
  for (int iy = std::max(0, icy - irad); iy <= std::min(g.n - 1, icy + irad); ++iy)
    for (int ix = std::max(0, icx - irad); ix <= std::min(g.n - 1, icx + irad); ++ix) {
      const Vec2 off = g.point(ix, iy) - y;
      if (off.norm2() <= rdisk * rdisk) disk.push_back({ix, iy, off});
    }

  // Profile predictions. The limit profile is radial for y = 0, so a radial
  // table plus interpolation covers the disk; otherwise evaluate per point.
  auto profile_rows = [&](const std::string& name, bool exact, double tol) {
    double num = 0, den = 0, zacc = 0;
    long zcnt = 0;
    std::vector<cplx> pred(disk.size());
    if (!exact && y.norm2() == 0.0) {
      const int nr = 48;
      std::vector<double> radii(nr + 1), re(nr + 1);
      for (int i = 0; i <= nr; ++i) {
        radii[i] = rdisk * 1.02 * i / nr;
        re[i] = moments::limit_mean_refocused({radii[i], 0}, y, params).value.real();
      }
      for (std::size_t k = 0; k < disk.size(); ++k) {
        const double r = disk[k].offset.norm();
        const double t = std::min(r / (rdisk * 1.02) * nr, static_cast<double>(nr) - 1e-9);
        const int i = static_cast<int>(t);
        pred[k] = re[i] + (t - i) * (re[i + 1] - re[i]);
      }
    } else if (homogeneous) {
      for (std::size_t k = 0; k < disk.size(); ++k)
        pred[k] = homogeneous_refocused_value(cfg, y + disk[k].offset);
    } else {
      for (std::size_t k = 0; k < disk.size(); ++k)
        pred[k] = exact ? moments::mean_refocused_exact(disk[k].offset, y, params).value
                        : moments::limit_mean_refocused(disk[k].offset, y, params).value;
    }
    for (std::size_t k = 0; k < disk.size(); ++k) {
      const cplx mc = stats.mean_field.at(disk[k].ix, disk[k].iy);
      const double se = stats.se_mean_field.at(disk[k].ix, disk[k].iy);
      num += std::norm(mc - pred[k]);
      den += std::norm(pred[k]);
      if (se > 0) {
        zacc += std::norm(mc - pred[k]) / (se * se);
        ++zcnt;
      }
    }
    ComparisonRow row;
    row.quantity = name;
    row.mc_value = std::sqrt(num / std::max(den, 1e-300));
    row.prediction = 0.0;
    row.rel_err = row.mc_value;
    row.z_score = zcnt ? std::sqrt(zacc / zcnt) : 0.0;
    row.pass = row.rel_err <= tol;
    rep.rows.push_back(row);
  };
  if (!homogeneous) profile_rows("mean_profile_rel_l2", false, opts.mean_profile_tol);
  profile_rows("mean_profile_rel_l2_exact", true,
               homogeneous ? 1e-6 : opts.mean_profile_tol);

  // Covariance probes.
  for (const auto& pr : stats.probes) {
    const cplx mean_p = stats.mean_field.value_near(y + pr.x + 0.5 * pr.h);
    const cplx mean_m = stats.mean_field.value_near(y + pr.x - 0.5 * pr.h);
    const cplx cov_mc = pr.mean - mean_p * std::conj(mean_m);
    const cplx cov_pred = moments::covariance_refocused(pr.x, pr.h, y, params).value;
    ComparisonRow row;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "cov_x(%.3g,%.3g)_h(%.3g,%.3g)", pr.x.x, pr.x.y, pr.h.x,
                  pr.h.y);
    row.quantity = buf;
    row.mc_value = cov_mc.real();
    row.prediction = cov_pred.real();
    const double diff = std::abs(cov_mc - cov_pred);
    row.rel_err = diff / std::max(std::abs(cov_pred), 1e-300);
    row.z_score = pr.se > 0 ? diff / pr.se : 0.0;
    row.pass = homogeneous
                   ? diff <= std::max(3.0 * pr.se, 1e-12)
                   : diff <= std::max(opts.covariance_rel_tol * std::abs(cov_pred), 3.0 * pr.se);
    rep.rows.push_back(row);
  }

  // Empirical x-independence of the variance over the probe disk.
  if (!homogeneous) {
    double s1 = 0, s2 = 0;
    for (const auto& d : disk) {
      const double v = stats.variance_field.at(d.ix, d.iy);
      s1 += v;
      s2 += v * v;
    }
    const double mean = s1 / disk.size();
    const double var = std::max(0.0, s2 / disk.size() - mean * mean);
    ComparisonRow row;
    row.quantity = "variance_cov_over_disk";
    row.mc_value = mean > 0 ? std::sqrt(var) / mean : 0.0;
    row.prediction = 0.0;
    row.rel_err = row.mc_value;
    row.z_score = 0.0;
    row.pass = row.mc_value <= opts.variance_cov_bound;
    rep.rows.push_back(row);
  }

  for (const auto& r : rep.rows) rep.all_pass = rep.all_pass && r.pass;
  return rep;
}

}  // namespace wavetr
