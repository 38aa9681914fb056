#include "priorlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "priorlab/error.hpp"
#include "priorlab/evenness.hpp"

namespace priorlab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> to_u64(const std::string& s) {
  std::uint64_t v = 0;
  const char* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) return std::nullopt;
  return v;
}

double number(const KeyValues& kv, const std::string& key) {
  const auto v = to_double(kv.at(key));
  if (!v) throw TypeError("build_config", key + ": expected a number, got '" + kv.at(key) + "'");
  return *v;
}

std::uint64_t count(const KeyValues& kv, const std::string& key) {
  const auto v = to_u64(kv.at(key));
  if (!v)
    throw TypeError("build_config", key + ": expected a nonnegative integer, got '" + kv.at(key) + "'");
  return *v;
}

std::vector<double> number_list(const KeyValues& kv, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split(kv.at(key), ',')) {
    const auto v = to_double(item);
    if (!v) throw TypeError("build_config", key + ": expected numbers, got '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

template <class T>
std::string join_numbers(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    if constexpr (std::is_floating_point_v<T>)
      s += format_g6(v[i]);
    else
      s += std::to_string(v[i]);
  }
  return s;
}

void require_positive(const std::vector<double>& v, const std::string& key) {
  for (double x : v)
    if (!(x > 0.0)) throw TypeError("build_config", key + ": values must be positive");
}

}  // namespace

std::string study_name(Study s) {
  switch (s) {
    case Study::Logistic: return "logistic";
    case Study::Hier: return "hier";
    case Study::Evenness: return "evenness";
    case Study::Induced: return "induced";
    case Study::Pte: return "pte";
  }
  return "?";
}

BinaryDataset load_binary_csv(const std::filesystem::path& path, bool flip_y) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("load_binary_csv", "cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw EmptyData("load_binary_csv", "file is empty");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto header = split(line, ',');
  if (header.size() != 2 || header[0] != "y" || header[1] != "x")
    throw SchemaError("load_binary_csv", "expected header 'y,x', got '" + trim(line) + "'");

  std::vector<int> y;
  Vec x;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 2)
      throw ParseError(lineno, std::min<std::size_t>(fields.size() + 1, 3),
                       "expected 2 fields, got " + std::to_string(fields.size()));
    if (fields[0] != "0" && fields[0] != "1")
      throw ParseError(lineno, 1, "y must be 0 or 1, got '" + fields[0] + "'");
    const auto xv = to_double(fields[1]);
    if (!xv) throw ParseError(lineno, 2, "x is not a finite number: '" + fields[1] + "'");
    const int yv = fields[0] == "1";
    y.push_back(flip_y ? 1 - yv : yv);
    x.push_back(*xv);
  }
  if (y.size() < 2) throw EmptyData("load_binary_csv", "need at least 2 data rows");
  return make_dataset(std::move(y), std::move(x));
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "study", "prior", "sigma",   "g",     "gamma",  "K",     "N", "iters", "burnin", "seed",
      "data",  "out",   "layout",  "scale", "flip-y", "sampler", "theta", "m", "nj"};
  return keys;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingRequired("parse_config_file", "cannot open config file " + path.string());
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  const auto& keys = config_keys();
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw TypeError("parse_config_file",
                      "line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw UnknownKey("parse_config_file", "unknown key '" + key + "'");
    kv[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return kv;
}

RunConfig build_config(const KeyValues& kv) {
  const auto& keys = config_keys();
  for (const auto& [k, v] : kv)
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw UnknownKey("build_config", "unknown key '" + k + "'");
  const auto has = [&](const char* k) { return kv.count(k) > 0; };

  RunConfig c;
  if (!has("study")) throw MissingRequired("build_config", "study");
  const std::string& study = kv.at("study");
  if (study == "logistic") c.study = Study::Logistic;
  else if (study == "hier") c.study = Study::Hier;
  else if (study == "evenness") c.study = Study::Evenness;
  else if (study == "induced") c.study = Study::Induced;
  else if (study == "pte") c.study = Study::Pte;
  else
    throw UnknownKey("build_config", "unknown study '" + study +
                                         "'; allowed: logistic, hier, evenness, induced, pte");

  if (!has("seed")) throw MissingRequired("build_config", "seed");
  c.seed = count(kv, "seed");

  std::vector<std::string> allowed_priors;
  std::vector<std::string> default_priors;
  std::size_t default_iters = 0, default_burnin = 0;
  switch (c.study) {
    case Study::Logistic:
      allowed_priors = {"normal", "gprior", "flat", "jeffreys"};
      default_iters = 11'000;
      default_burnin = 1'000;
      break;
    case Study::Hier:
      allowed_priors = {"lognormal", "gamma"};
      default_priors = {"lognormal"};
      default_iters = 100'000;
      default_burnin = 10'000;
      break;
    case Study::Induced:
      allowed_priors = {"normal", "gprior"};
      default_priors = {"normal"};
      default_iters = 10'000;
      break;
    case Study::Evenness: default_iters = 10'000; break;
    case Study::Pte: default_iters = 1'000'000; break;
  }

  if (has("prior")) {
    if (allowed_priors.empty())
      throw UnknownKey("build_config", "prior is not used by study " + study);
    c.priors = split(kv.at("prior"), ',');
    for (const auto& p : c.priors)
      if (std::find(allowed_priors.begin(), allowed_priors.end(), p) == allowed_priors.end())
        throw UnknownKey("build_config",
                         "unknown prior '" + p + "'; allowed: " + join(allowed_priors));
  } else if (c.study == Study::Logistic) {
    throw MissingRequired("build_config", "prior");
  } else {
    c.priors = default_priors;
  }

  const bool wants_normal = std::find(c.priors.begin(), c.priors.end(), "normal") != c.priors.end();
  if (has("sigma")) {
    c.sigmas = number_list(kv, "sigma");
    require_positive(c.sigmas, "sigma");
  } else if (c.study == Study::Logistic && wants_normal) {
    throw MissingRequired("build_config", "sigma");
  } else if (c.study == Study::Induced) {
    c.sigmas = {25.0};
  } else if (c.study == Study::Pte) {
    c.sigmas = {1.0, 1.0};
  }
  if (c.study == Study::Pte) {
    if (c.sigmas.size() == 1) c.sigmas.push_back(c.sigmas.front());
    if (c.sigmas.size() != 2) throw TypeError("build_config", "sigma: pte takes one or two values");
  }

  if (has("g")) {
    c.g = number(kv, "g");
    if (!(*c.g > 0.0)) throw TypeError("build_config", "g: must be positive");
  }

  if (has("K")) c.K = count(kv, "K");
  if (c.K < 2) throw TypeError("build_config", "K: must be at least 2");
  if (c.study == Study::Evenness) {
    c.gammas = has("gamma") ? number_list(kv, "gamma") : std::vector<double>{0.125};
    require_positive(c.gammas, "gamma");
    if (has("N")) {
      for (const auto& item : split(kv.at("N"), ',')) {
        const auto v = to_u64(item);
        if (!v) throw TypeError("build_config", "N: expected nonnegative integers, got '" + item + "'");
        c.Ns.push_back(*v);
      }
    } else {
      c.Ns = {0};
    }
    if (has("theta")) {
      c.theta = number_list(kv, "theta");
    } else if (c.K == 8) {
      c.theta = default_theta_true();
    } else {
      throw MissingRequired("build_config", "theta");
    }
    if (c.theta.size() != c.K)
      throw TypeError("build_config", "theta: needs exactly K entries");
  }

  c.iters = has("iters") ? count(kv, "iters") : default_iters;
  c.burnin = has("burnin") ? count(kv, "burnin") : default_burnin;
  if (c.iters == 0) throw TypeError("build_config", "iters: must be positive");
  if ((c.study == Study::Logistic || c.study == Study::Hier) && c.burnin >= c.iters)
    throw TypeError("build_config", "burnin: must be smaller than iters");

  if (has("data")) c.data = kv.at("data");
  if (c.study == Study::Logistic && c.data.empty()) throw MissingRequired("build_config", "data");
  if (has("out")) c.out = kv.at("out");

  if (has("layout")) {
    const auto& l = kv.at("layout");
    if (l == "paper") c.layout = Layout::Paper;
    else if (l == "plain") c.layout = Layout::Plain;
    else throw UnknownKey("build_config", "unknown layout '" + l + "'; allowed: plain, paper");
  }
  if (has("scale") && kv.at("scale") != "auto") {
    c.scale = number(kv, "scale");
    if (!(*c.scale > 0.0)) throw TypeError("build_config", "scale: must be positive or auto");
  }
  if (has("flip-y")) {
    const auto& f = kv.at("flip-y");
    if (f == "true" || f == "1") c.flip_y = true;
    else if (f == "false" || f == "0") c.flip_y = false;
    else throw TypeError("build_config", "flip-y: expected true or false");
  }
  if (has("sampler")) {
    const auto& s = kv.at("sampler");
    if (s == "auto") c.sampler = SamplerKind::Auto;
    else if (s == "rw") c.sampler = SamplerKind::RandomWalk;
    else if (s == "fisher") c.sampler = SamplerKind::Fisher;
    else throw UnknownKey("build_config", "unknown sampler '" + s + "'; allowed: auto, rw, fisher");
  }
  if (has("m")) c.m = count(kv, "m");
  if (has("nj")) c.nj = count(kv, "nj");
  if (c.study == Study::Hier && (c.m < 1 || c.nj < 2))
    throw TypeError("build_config", "m must be >= 1 and nj >= 2");
  return c;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  return build_config(read_config_file(path));
}

std::string RunConfig::echo() const {
  std::map<std::string, std::string> kv;
  kv["study"] = study_name(study);
  kv["seed"] = std::to_string(seed);
  kv["iters"] = std::to_string(iters);
  kv["burnin"] = std::to_string(burnin);
  kv["out"] = out.generic_string();
  kv["layout"] = layout == Layout::Paper ? "paper" : "plain";
  if (!priors.empty()) kv["prior"] = join(priors);
  if (!sigmas.empty()) kv["sigma"] = join_numbers(sigmas);
  if (g) kv["g"] = format_g6(*g);
  if (study == Study::Evenness) {
    kv["gamma"] = join_numbers(gammas);
    kv["K"] = std::to_string(K);
    kv["N"] = join_numbers(Ns);
    kv["theta"] = join_numbers(theta);
  }
  if (study == Study::Logistic) {
    kv["data"] = data.generic_string();
    kv["scale"] = scale ? format_g6(*scale) : "auto";
    kv["flip-y"] = flip_y ? "true" : "false";
    kv["sampler"] = sampler == SamplerKind::Auto ? "auto"
                    : sampler == SamplerKind::RandomWalk ? "rw" : "fisher";
  }
  if (study == Study::Hier) {
    kv["m"] = std::to_string(m);
    kv["nj"] = std::to_string(nj);
  }
  std::string s;
  for (const auto& [k, v] : kv) s += k + "=" + v + "\n";
  return s;
}

std::string format_g6(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("write_summary_csv", "cannot write " + path.string());
  out << "label,mean,sd,q10,q50,q90,mode,ess\n";
  for (const auto& r : rows)
    out << r.label << ',' << format_g6(r.mean) << ',' << format_g6(r.sd) << ','
        << format_g6(r.q10) << ',' << format_g6(r.q50) << ',' << format_g6(r.q90) << ','
        << format_g6(r.mode) << ',' << format_g6(r.ess) << '\n';
}

void write_density_csv(const std::filesystem::path& path, const DensityGrid& density) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("write_density_csv", "cannot write " + path.string());
  out << "grid,density\n";
  for (std::size_t i = 0; i < density.grid.size(); ++i)
    out << format_g6(density.grid[i]) << ',' << format_g6(density.density[i]) << '\n';
}

}  // namespace priorlab
