#include "priorlab/study.hpp"

#include <boost/version.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "priorlab/error.hpp"
#include "priorlab/evenness.hpp"
#include "priorlab/induced.hpp"
#include "priorlab/logistic.hpp"

namespace priorlab {

namespace fs = std::filesystem;

namespace {

struct Track {
  std::string label;  // "<tag>/<param>"
  std::string file_tag;
  Vec draws;
};

struct Context {
  const RunConfig& config;
  OutputBundle bundle;
  std::vector<std::string> notes;  // manifest lines: acceptance rates and extras
  std::vector<SummaryRow> rows;
  std::string input_hash = "none";
};

std::string file_safe(std::string s) {
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-')) c = '_';
  return s;
}

void emit(Context& ctx, const std::vector<Track>& tracks, bool truncate_tails = false) {
  for (const auto& t : tracks) {
    std::optional<double> bw;
    if (truncate_tails) {
      // Normal-reference width from the IQR; the sd is dominated by the tails.
      const double iqr = sample_quantile(t.draws, 0.75) - sample_quantile(t.draws, 0.25);
      bw = 0.9 * iqr / 1.349 * std::pow(static_cast<double>(t.draws.size()), -0.2);
    }
    ctx.rows.push_back(summary_stats(t.draws, t.label, bw));
    Vec grid;
    if (truncate_tails) {
      const double lo = sample_quantile(t.draws, 0.001);
      const double hi = sample_quantile(t.draws, 0.999);
      grid.resize(512);
      for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / 511.0;
    } else {
      grid = density_grid_for(t.draws, 512);
    }
    const auto path = ctx.config.out / ("density_" + t.file_tag + ".csv");
    write_density_csv(path, kde_density(t.draws, grid, bw));
    ctx.bundle.densities.push_back(path);
  }
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// logistic -------------------------------------------------------------------

struct LogisticRun {
  std::string tag;
  LogisticPrior prior;
  Chain chain;
};

std::vector<LogisticPrior> logistic_priors(const RunConfig& c, std::size_t n) {
  std::vector<LogisticPrior> out;
  for (const auto& p : c.priors) {
    if (p == "normal")
      for (double s : c.sigmas) out.push_back(IidNormalPrior{s});
    else if (p == "gprior")
      out.push_back(GPrior{c.g.value_or(static_cast<double>(n))});
    else if (p == "flat")
      out.push_back(FlatPrior{});
    else
      out.push_back(JeffreysPrior{});
  }
  return out;
}

std::string logistic_tag(const LogisticPrior& p) {
  if (const auto* n = std::get_if<IidNormalPrior>(&p)) return "normal:sigma=" + format_g6(n->sigma);
  if (const auto* g = std::get_if<GPrior>(&p)) return "gprior:g=" + format_g6(g->g);
  return prior_name(p);
}

void run_logistic(Context& ctx) {
  const auto& c = ctx.config;
  const auto data = load_binary_csv(c.data, c.flip_y);
  ctx.input_hash = hex64(fnv1a64(read_bytes(c.data)));
  const auto fit = fit_mle(data);
  ctx.notes.push_back("mle alpha=" + format_g6(fit.theta_hat.alpha) +
                      " beta=" + format_g6(fit.theta_hat.beta));

  std::vector<LogisticRun> runs;
  const auto priors = logistic_priors(c, data.n());
  for (std::size_t i = 0; i < priors.size(); ++i) {
    MHConfig mh;
    mh.iterations = c.iters;
    mh.burnin = c.burnin;
    mh.seed = derive_seed(c.seed, i);
    mh.proposal_scale = c.scale;
    const bool rw = c.sampler == SamplerKind::RandomWalk ||
                    (c.sampler == SamplerKind::Auto &&
                     std::holds_alternative<IidNormalPrior>(priors[i]));
    Chain chain = rw ? rw_metropolis(data, priors[i], mh) : fisher_proposal_mh(data, priors[i], mh);
    const std::string tag = logistic_tag(priors[i]);
    ctx.notes.push_back("acceptance " + tag + " sampler=" + (rw ? "rw" : "fisher") +
                        " rate=" + format_g6(chain.accept_rate) +
                        " scale=" + format_g6(chain.final_scale));
    emit(ctx, {{tag + "/alpha", file_safe(tag) + "_alpha", chain.column(0)},
               {tag + "/beta", file_safe(tag) + "_beta", chain.column(1)}});
    runs.push_back({tag, priors[i], std::move(chain)});
  }

  if (c.layout == Layout::Paper) {
    std::ostringstream t;
    t << "prior                    alpha.mean   alpha.sd     beta.mean    beta.sd\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& a = ctx.rows[2 * i];
      const auto& b = ctx.rows[2 * i + 1];
      char line[160];
      std::snprintf(line, sizeof line, "%-24s %-12s %-12s %-12s %-12s\n", runs[i].tag.c_str(),
                    format_g6(a.mean).c_str(), format_g6(a.sd).c_str(),
                    format_g6(b.mean).c_str(), format_g6(b.sd).c_str());
      t << line;
    }
    const auto path = c.out / "table.txt";
    std::ofstream(path, std::ios::binary) << t.str();
    ctx.bundle.extra.push_back(path);
  }
}

// hier -----------------------------------------------------------------------

void run_hier(Context& ctx) {
  const auto& c = ctx.config;
  const auto sim = default_hier_dataset(derive_seed(c.seed, 0), c.m, c.nj);
  const std::size_t k = sim.data.k();
  const char* coef[] = {"intercept", "slope"};
  std::vector<std::pair<std::string, HierChains>> results;
  for (std::size_t p = 0; p < c.priors.size(); ++p) {
    GibbsConfig g;
    g.iterations = c.iters;
    g.burnin = c.burnin;
    g.seed = derive_seed(c.seed, 1 + p);
    const auto& tag = c.priors[p];
    HierChains ch = run_gibbs(sim.data, hier_hyper_for(tag, k), g);
    std::string acc = "acceptance " + tag + " S=";
    for (std::size_t i = 0; i < k; ++i) acc += (i ? "," : "") + format_g6(ch.s_accept_rate[i]);
    acc += " r=" + format_g6(ch.r_accept_rate);
    ctx.notes.push_back(acc);

    std::vector<Track> tracks;
    for (std::size_t j = 0; j < sim.data.m(); ++j)
      for (std::size_t i = 0; i < k; ++i) {
        const std::string name = "beta" + std::to_string(j + 1) + "." + coef[i];
        Vec col(ch.beta[j].rows());
        for (std::size_t t = 0; t < col.size(); ++t) col[t] = ch.beta[j](t, i);
        tracks.push_back({tag + "/" + name, tag + "_" + name, std::move(col)});
      }
    for (std::size_t i = 0; i < k; ++i) {
      Vec s(ch.S.rows()), b(ch.betabar.rows());
      for (std::size_t t = 0; t < s.size(); ++t) {
        s[t] = ch.S(t, i);
        b[t] = ch.betabar(t, i);
      }
      tracks.push_back({tag + "/S" + std::to_string(i + 1), tag + "_S" + std::to_string(i + 1), s});
      tracks.push_back({tag + "/betabar." + coef[i], tag + "_betabar." + coef[i], b});
    }
    if (k == 2) tracks.push_back({tag + "/r", tag + "_r", ch.r});
    emit(ctx, tracks);
    results.emplace_back(tag, std::move(ch));
  }

  if (c.layout == Layout::Paper) {
    std::ostringstream t;
    for (const auto& [tag, ch] : results) {
      t << "S ~ " << tag << "\n";
      t << "estimate ";
      for (std::size_t j = 0; j < sim.data.m(); ++j)
        t << " reg" << j + 1 << ".mean reg" << j + 1 << ".sd";
      t << "\n";
      for (std::size_t i = 0; i < k; ++i) {
        t << coef[i];
        for (const auto& r : ctx.rows)
          for (std::size_t j = 0; j < sim.data.m(); ++j)
            if (r.label == tag + "/beta" + std::to_string(j + 1) + "." + coef[i])
              t << ' ' << format_g6(r.mean) << ' ' << format_g6(r.sd);
        t << "\n";
      }
      for (std::size_t i = 0; i < k; ++i)
        for (const auto& r : ctx.rows)
          if (r.label == tag + "/S" + std::to_string(i + 1))
            t << "S" << i + 1 << ' ' << format_g6(r.mean) << ' ' << format_g6(r.sd) << "\n";
      t << "\n";
    }
    const auto path = c.out / "table.txt";
    std::ofstream(path, std::ios::binary) << t.str();
    ctx.bundle.extra.push_back(path);
  }
}

// evenness -------------------------------------------------------------------

void run_evenness(Context& ctx) {
  const auto& c = ctx.config;
  RngStream rng(c.seed);
  const auto cells = sweep_table(c.gammas, c.Ns, c.theta, rng, c.iters);
  ctx.notes.push_back("evenness theta_true=" + format_g6(evenness(c.theta)));
  std::vector<Track> tracks;
  for (const auto& cell : cells) {
    const std::string tag = "gamma=" + format_g6(cell.gamma) + ",N=" + std::to_string(cell.N);
    tracks.push_back({tag + "/H", file_safe(tag) + "_H", cell.draws.values});
  }
  emit(ctx, tracks);

  if (c.layout == Layout::Paper) {
    std::ostringstream t;
    t << "gamma        ";
    for (auto n : c.Ns) t << " N=" << n;
    t << "\n";
    for (double g : c.gammas) {
      for (const char* stat : {"mean", "sd"}) {
        t << "gamma=" << format_g6(g) << " " << stat;
        for (auto n : c.Ns)
          for (const auto& cell : cells)
            if (cell.gamma == g && cell.N == n)
              t << ' ' << format_g6(stat[0] == 'm' ? cell.mean : cell.sd);
        t << "\n";
      }
    }
    const auto path = c.out / "table.txt";
    std::ofstream(path, std::ios::binary) << t.str();
    ctx.bundle.extra.push_back(path);
  }
}

// induced --------------------------------------------------------------------

void run_induced(Context& ctx) {
  const auto& c = ctx.config;
  const Vec xgrid = default_age_grid();
  const Mat design = design_matrix(xgrid);
  const Vec anchors = {20.0, 100.0};
  std::vector<LogisticPrior> priors;
  for (const auto& p : c.priors) {
    if (p == "normal")
      for (double s : c.sigmas) priors.push_back(IidNormalPrior{s});
    else
      priors.push_back(GPrior{c.g.value_or(calibrated_g(xgrid, anchors, 5.0))});
  }
  std::ostringstream sat;
  sat << "prior,eps,saturation\n";
  std::vector<Track> tracks;
  for (std::size_t i = 0; i < priors.size(); ++i) {
    RngStream rng(derive_seed(c.seed, i));
    const auto curves = prior_cdf_curves(priors[i], design, xgrid, c.iters, rng);
    const std::string tag = logistic_tag(priors[i]);
    sat << tag << ",0.01," << format_g6(saturation_fraction(curves)) << "\n";

    const auto path = c.out / ("curves_" + file_safe(tag) + ".csv");
    std::ofstream out(path, std::ios::binary);
    out << "draw,x,rho\n";
    const std::size_t shown = std::min<std::size_t>(curves.curves.rows(), 200);
    for (std::size_t d = 0; d < shown; ++d)
      for (std::size_t j = 0; j < xgrid.size(); ++j)
        out << d << ',' << format_g6(xgrid[j]) << ',' << format_g6(curves.curves(d, j)) << '\n';
    ctx.bundle.extra.push_back(path);

    Vec a(curves.thetas.rows()), b(curves.thetas.rows());
    for (std::size_t d = 0; d < a.size(); ++d) {
      a[d] = curves.thetas(d, 0);
      b[d] = curves.thetas(d, 1);
    }
    tracks.push_back({tag + "/alpha", file_safe(tag) + "_alpha", std::move(a)});
    tracks.push_back({tag + "/beta", file_safe(tag) + "_beta", std::move(b)});
  }
  const auto path = c.out / "saturation.csv";
  std::ofstream(path, std::ios::binary) << sat.str();
  ctx.bundle.extra.push_back(path);
  emit(ctx, tracks);
}

// pte ------------------------------------------------------------------------

void run_pte(Context& ctx) {
  const auto& c = ctx.config;
  RngStream rng(c.seed);
  const Normal p1{0.0, c.sigmas[0]};
  const Normal p2{0.0, c.sigmas[1]};
  const auto draws = pte_induced(p1, p2, c.iters, rng);
  std::size_t inside = 0;
  for (double v : draws.values) inside += v > 0.0 && v < 1.0;
  const Cauchy ref{1.0, c.sigmas[0] / c.sigmas[1]};
  ctx.notes.push_back("pte p_in_unit_interval=" +
                      format_g6(static_cast<double>(inside) / static_cast<double>(c.iters)));
  ctx.notes.push_back("pte ks_distance_cauchy=" +
                      format_g6(ks_distance(draws.values, [&](double x) { return dist_cdf(ref, x); })));
  emit(ctx, {{"pte", "pte", draws.values}}, true);
}

}  // namespace

SimulatedHier default_hier_dataset(std::uint64_t seed, std::size_t m, std::size_t n_j) {
  RngStream rng(seed);
  const Vec betabar = {17.0, -9.5};
  const Mat sigma = {{0.25, 0.0}, {0.0, 0.25}};
  const Vec tau2(m, 1.0);
  return simulate_hier_data(rng, betabar, sigma, tau2, m, n_j);
}

HierHyper hier_hyper_for(const std::string& prior, std::size_t k) {
  HierHyper h;
  if (prior == "lognormal")
    h.s_prior = SPriorSpec::lognormal(k, -1.0, 0.5);
  else if (prior == "gamma")
    h.s_prior = SPriorSpec::gamma(k, 4.0, 1.0);
  else
    throw UnknownKey("hier_hyper_for", "unknown prior '" + prior + "'; allowed: lognormal, gamma");
  return h;
}

OutputBundle run_study(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) throw SchemaError("run_study", "cannot create " + config.out.string());

  Context ctx{config, {}, {}, {}, "none"};
  switch (config.study) {
    case Study::Logistic: run_logistic(ctx); break;
    case Study::Hier: run_hier(ctx); break;
    case Study::Evenness: run_evenness(ctx); break;
    case Study::Induced: run_induced(ctx); break;
    case Study::Pte: run_pte(ctx); break;
  }

  ctx.bundle.summary = config.out / "summary.csv";
  write_summary_csv(ctx.bundle.summary, ctx.rows);
  ctx.bundle.rows = ctx.rows;

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string echo = config.echo();
  const std::string config_hash = hex64(fnv1a64(echo));
  std::ostringstream m;
  m << "prior-lab " << kVersion << "\n";
  m << "compiler " << __VERSION__ << "\n";
  m << "boost " << BOOST_LIB_VERSION << "\n";
  m << "seed " << config.seed << "\n";
  m << "config_hash " << config_hash << "\n";
  m << "input_hash " << ctx.input_hash << "\n";
  m << "wall_clock_seconds " << format_g6(wall) << "\n";
  for (const auto& n : ctx.notes) m << n << "\n";
  m << "[config]\n" << echo;
  m << "[files]\n";
  const auto list = [&](const fs::path& p) {
    m << p.filename().generic_string() << " seed=" << config.seed
      << " config_hash=" << config_hash << "\n";
  };
  list(ctx.bundle.summary);
  for (const auto& p : ctx.bundle.densities) list(p);
  for (const auto& p : ctx.bundle.extra) list(p);
  ctx.bundle.manifest = config.out / "manifest.txt";
  std::ofstream(ctx.bundle.manifest, std::ios::binary) << m.str();
  return ctx.bundle;
}

}  // namespace priorlab
