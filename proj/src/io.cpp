#include "wavetr/io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "wavetr/configfile.hpp"

namespace wavetr::io {

namespace {

constexpr char kScreenMagic[8] = {'W', 'T', 'R', 'S', 'C', 'R', '0', '1'};
constexpr char kFieldMagic[8] = {'W', 'T', 'R', 'F', 'L', 'D', '0', '1'};
constexpr char kRealMagic[8] = {'W', 'T', 'R', 'R', 'E', 'L', '0', '1'};

void write_header(std::ofstream& f, const char magic[8], std::uint64_t n, double extent,
                  double aux) {
  f.write(magic, 8);
  f.write(reinterpret_cast<const char*>(&n), 8);
  f.write(reinterpret_cast<const char*>(&extent), 8);
  f.write(reinterpret_cast<const char*>(&aux), 8);
}

void read_header(std::ifstream& f, const char magic[8], std::uint64_t& n, double& extent,
                 double& aux, const std::string& path) {
  char got[8];
  f.read(got, 8);
  if (!f || std::memcmp(got, magic, 8) != 0)
    throw ValidationError("file", "bad magic in '" + path + "'");
  f.read(reinterpret_cast<char*>(&n), 8);
  f.read(reinterpret_cast<char*>(&extent), 8);
  f.read(reinterpret_cast<char*>(&aux), 8);
  if (!f) throw ValidationError("file", "truncated header in '" + path + "'");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("file", "cannot open '" + path + "' for writing");
  return f;
}

}  // namespace

std::string format_num(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

void write_screen_binary(const std::string& path, const PhaseScreen& s) {
  auto f = open_out(path);
  write_header(f, kScreenMagic, static_cast<std::uint64_t>(s.values.grid().n),
               s.values.grid().extent, s.delta_z);
  f.write(reinterpret_cast<const char*>(s.values.data()),
          static_cast<std::streamsize>(s.values.size() * sizeof(double)));
}

PhaseScreen read_screen_binary(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("file", "cannot open '" + path + "'");
  std::uint64_t n;
  double extent, aux;
  read_header(f, kScreenMagic, n, extent, aux, path);
  PhaseScreen s;
  s.delta_z = aux;
  s.values = RealField(TransverseGrid(static_cast<int>(n), extent));
  f.read(reinterpret_cast<char*>(s.values.data()),
         static_cast<std::streamsize>(s.values.size() * sizeof(double)));
  if (!f) throw ValidationError("file", "truncated data in '" + path + "'");
  return s;
}

void write_field_binary(const std::string& path, const ComplexField& fld, double aux) {
  auto f = open_out(path);
  write_header(f, kFieldMagic, static_cast<std::uint64_t>(fld.grid().n), fld.grid().extent, aux);
  f.write(reinterpret_cast<const char*>(fld.data()),
          static_cast<std::streamsize>(fld.size() * sizeof(cplx)));
}

ComplexField read_field_binary(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("file", "cannot open '" + path + "'");
  std::uint64_t n;
  double extent, aux;
  read_header(f, kFieldMagic, n, extent, aux, path);
  ComplexField fld(TransverseGrid(static_cast<int>(n), extent));
  f.read(reinterpret_cast<char*>(fld.data()),
         static_cast<std::streamsize>(fld.size() * sizeof(cplx)));
  if (!f) throw ValidationError("file", "truncated data in '" + path + "'");
  return fld;
}

void write_real_binary(const std::string& path, const RealField& fld, double aux) {
  auto f = open_out(path);
  write_header(f, kRealMagic, static_cast<std::uint64_t>(fld.grid().n), fld.grid().extent, aux);
  f.write(reinterpret_cast<const char*>(fld.data()),
          static_cast<std::streamsize>(fld.size() * sizeof(double)));
}

void write_field_csv(const std::string& path, const ComplexField& fld) {
  auto f = open_out(path);
  f << "x1,x2,re,im,abs2\n";
  const TransverseGrid& g = fld.grid();
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const cplx v = fld.at(ix, iy);
      f << format_num(g.coord(ix)) << ',' << format_num(g.coord(iy)) << ','
        << format_num(v.real()) << ',' << format_num(v.imag()) << ','
        << format_num(std::norm(v)) << '\n';
    }
}

void write_report_csv(const std::string& path, const ComparisonReport& rep) {
  auto f = open_out(path);
  f << "quantity,mc_value,prediction,rel_err,z_score,pass\n";
  for (const auto& r : rep.rows)
    f << r.quantity << ',' << format_num(r.mc_value) << ',' << format_num(r.prediction) << ','
      << format_num(r.rel_err) << ',' << format_num(r.z_score) << ','
      << (r.pass ? "true" : "false") << '\n';
}

void write_manifest_atomic(const std::string& path, const ExperimentConfig& cfg,
                           const std::string& command,
                           const std::vector<std::pair<std::string, std::string>>& derived,
                           const std::vector<std::string>& outputs) {
  const std::string tmp = path + ".tmp";
  {
    auto f = open_out(tmp);
    f << "# wavetr run manifest\n";
    f << "# version: " << kToolVersion << "\n";
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char ts[64];
    std::strftime(ts, sizeof(ts), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    f << "# created: " << ts << "\n";
    f << "# command: " << command << "\n";
    f << "# covariance_profile: " << cfg.medium.shape << "\n";
    for (const auto& [k, v] : derived) f << "# derived " << k << " = " << v << "\n";
    for (const auto& o : outputs) f << "# output: " << o << "\n";
    f << "# resolved config follows; this file is itself a loadable config.\n";
    f << write_config_text(cfg);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ValidationError("file", "cannot move manifest into place at '" + path + "'");
}

}  // namespace wavetr::io
