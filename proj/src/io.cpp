#include "vlcnoma/io.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "vlcnoma/error.hpp"
#include "vlcnoma/format.hpp"

namespace vlcnoma {

std::string aggregate_csv(const std::vector<Aggregate>& rows, RateUnit unit) {
  std::ostringstream os;
  os << kAggregateHeader << '\n';
  for (const Aggregate& a : rows) {
    const double se = unit == RateUnit::nat ? a.std_error : nat_to_bit(a.std_error);
    os << a.sweep_var << ',' << format_double(a.sweep_value) << ',' << a.scheme << ','
       << to_string(a.objective) << ',' << format_double(a.mean) << ','
       << format_double(nat_to_bit(a.mean)) << ',' << format_double(se) << ',' << a.n_trials
       << ',' << a.n_infeasible << ',' << a.n_degenerate << '\n';
  }
  return os.str();
}

std::string records_csv(const std::string& sweep_var, const std::vector<double>& values,
                        const std::vector<std::vector<TrialRecord>>& records) {
  std::ostringstream os;
  os << "sweep_var,sweep_value,trial,channel_hash,scheme,objective,value_nat_s,r_a,r_b,r_weak,"
        "alpha1,alpha2,feasible,degenerate\n";
  for (std::size_t p = 0; p < records.size(); ++p)
    for (const TrialRecord& tr : records[p])
      for (const SchemeRecord& r : tr.schemes)
        os << sweep_var << ',' << format_double(values[p]) << ',' << tr.index << ','
           << tr.channel_hash << ',' << r.tag << ',' << to_string(r.objective) << ','
           << format_double(r.value) << ',' << format_double(r.rates.r_a) << ','
           << format_double(r.rates.r_b) << ',' << format_double(r.rates.r_weak) << ','
           << format_double(r.alpha1) << ',' << format_double(r.alpha2) << ','
           << (r.feasible ? 1 : 0) << ',' << (r.degenerate ? 1 : 0) << '\n';
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::create_directories(dir);
  std::random_device rd;
  const fs::path tmp =
      dir / (path.filename().string() + ".tmp" + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot replace '" + path.string() + "': " + ec.message());
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned int i = 0; i < len; ++i) {
    s += hex[md[i] >> 4];
    s += hex[md[i] & 0xf];
  }
  return s;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace vlcnoma
