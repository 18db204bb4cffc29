#include "lgsim/model_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lgsim {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw IoError("trailing characters in number: " + s);
    return v;
  } catch (const std::exception&) {
    throw IoError("bad number: " + s);
  }
}

long long parse_int(const std::string& s) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw IoError("trailing characters in integer: " + s);
    return v;
  } catch (const std::exception&) {
    throw IoError("bad integer: " + s);
  }
}

}  // namespace

std::map<std::string, std::string> load_keyvalue(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    std::string key, value;
    const std::size_t eq = line.find('=');
    if (eq != std::string::npos) {
      key = strip(line.substr(0, eq));
      value = strip(line.substr(eq + 1));
    } else {
      const std::size_t sp = line.find_first_of(" \t");
      if (sp == std::string::npos) throw IoError("expected 'key = value': " + line);
      key = strip(line.substr(0, sp));
      value = strip(line.substr(sp + 1));
    }
    if (key.empty() || value.empty()) throw IoError("expected 'key = value': " + line);
    kv[key] = value;
  }
  return kv;
}

RateModel load_model(const std::string& path) {
  auto kv = load_keyvalue(path);
  if (!kv.count("K") || !kv.count("b") || !kv.count("p"))
    throw IoError("model file needs K, b and p entries");
  const int K = static_cast<int>(parse_int(kv["K"]));
  std::vector<double> b;
  for (auto& tok : split_ws(kv["b"])) b.push_back(parse_double(tok));
  std::vector<std::pair<int, double>> p;
  for (auto& tok : split_ws(kv["p"])) {
    const std::size_t colon = tok.find(':');
    if (colon == std::string::npos) throw IoError("kernel entries are offset:probability");
    p.emplace_back(static_cast<int>(parse_int(tok.substr(0, colon))),
                   parse_double(tok.substr(colon + 1)));
  }
  return build_model(K, b, p);
}

void save_model(const RateModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "K = " << model.max_occupancy() << "\n";
  out << "b =";
  for (int n = 0; n <= model.max_occupancy(); ++n)
    for (int m = 0; m <= model.max_occupancy(); ++m) out << ' ' << format_double(model.b(n, m));
  out << "\np =";
  for (auto& [z, pz] : model.kernel()) out << ' ' << z << ':' << format_double(pz);
  out << "\n";
}

void save_snapshot(const Configuration& config, const SnapshotMeta& meta,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "# origin=" << config.origin() << " size=" << config.size() << " boundary="
      << (config.boundary() == Boundary::periodic ? "periodic" : "frozen") << "\n";
  out << "# N=" << meta.N << " time=" << format_double(meta.time) << " seed=" << meta.seed
      << "\n";
  out << "site,occupancy\n";
  for (long long s = config.origin(); s < config.end(); ++s)
    out << s << ',' << config.at(s) << "\n";
}

std::pair<Configuration, SnapshotMeta> load_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  long long origin = 0;
  std::size_t size = 0;
  Boundary boundary = Boundary::frozen;
  SnapshotMeta meta;
  auto read_headers = [&](const std::string& l) {
    std::istringstream is(l.substr(1));
    std::string tok;
    while (is >> tok) {
      const std::size_t eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string k = tok.substr(0, eq);
      const std::string v = tok.substr(eq + 1);
      if (k == "origin") origin = parse_int(v);
      else if (k == "size") size = static_cast<std::size_t>(parse_int(v));
      else if (k == "boundary") boundary = (v == "periodic") ? Boundary::periodic : Boundary::frozen;
      else if (k == "N") meta.N = parse_int(v);
      else if (k == "time") meta.time = parse_double(v);
      else if (k == "seed") meta.seed = static_cast<std::uint64_t>(parse_int(v));
    }
  };
  Configuration config;
  bool made = false;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      read_headers(line);
      continue;
    }
    if (line == "site,occupancy") {
      config = Configuration(origin, size, boundary);
      made = true;
      continue;
    }
    if (!made) throw IoError("snapshot data before header");
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw IoError("snapshot rows are site,occupancy");
    config.set(parse_int(line.substr(0, comma)),
               static_cast<int>(parse_int(line.substr(comma + 1))));
  }
  if (!made) throw IoError("snapshot missing site,occupancy header");
  return {std::move(config), meta};
}

void save_flux_table(const FluxTable& table, std::uint64_t model_hash, const std::string& params,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(model_hash));
  out << "# model=" << hash << " V=" << format_double(table.V);
  if (!params.empty()) out << ' ' << params;
  out << "\nrho,G,ci\n";
  for (std::size_t i = 0; i < table.rho.size(); ++i)
    out << format_double(table.rho[i]) << ',' << format_double(table.G[i]) << ','
        << format_double(table.ci[i]) << "\n";
}

FluxTable load_flux_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  FluxTable t;
  std::string line;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line == "rho,G,ci") continue;
    if (line[0] == '#') {
      std::istringstream is(line.substr(1));
      std::string tok;
      while (is >> tok)
        if (tok.rfind("V=", 0) == 0) t.V = parse_double(tok.substr(2));
      continue;
    }
    std::istringstream is(line);
    std::string a, b, c;
    if (!std::getline(is, a, ',') || !std::getline(is, b, ',') || !std::getline(is, c))
      throw IoError("flux rows are rho,G,ci");
    t.rho.push_back(parse_double(a));
    t.G.push_back(parse_double(b));
    t.ci.push_back(parse_double(c));
  }
  t.validate();
  return t;
}

void save_profile(const PiecewiseConstantProfile& u, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "x,value\n";
  for (std::size_t i = 0; i < u.xs.size(); ++i)
    out << format_double(u.xs[i]) << ',' << format_double(u.vals[i + 1]) << "\n";
}

PiecewiseConstantProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<double> xs;
  std::vector<double> vals{0.0};
  std::string line;
  while (std::getline(in, line)) {
    line = strip(line);
    if (line.empty() || line[0] == '#' || line == "x,value") continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw IoError("profile rows are x,value");
    xs.push_back(parse_double(line.substr(0, comma)));
    vals.push_back(parse_double(line.substr(comma + 1)));
  }
  return PiecewiseConstantProfile(std::move(xs), std::move(vals));
}

}  // namespace lgsim
