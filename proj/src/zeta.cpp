#include "sonine/zeta.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "sonine/errors.hpp"

namespace sonine {
namespace {

// B_{2k} / (2k)!, k = 1..6.
constexpr std::array<double, 6> kEulerMaclaurin = {
    1.0 / 12.0,         -1.0 / 720.0,         1.0 / 30240.0,
    -1.0 / 1209600.0,   1.0 / 47900160.0,     -691.0 / 1307674368000.0};

const double kLogPi = std::log(kPi);

struct EmParts {
  Complex head;       // sum_{n < N} n^-s
  Complex pole_term;  // N^(1-s)
  Complex rest;       // N^-s / 2 + Bernoulli corrections
};

EmParts euler_maclaurin(Complex s) {
  const int n_terms = std::max(20, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
  EmParts p{};
  for (int n = 1; n < n_terms; ++n) {
    p.head += std::exp(-s * std::log(static_cast<double>(n)));
  }
  const double big_n = n_terms;
  const double log_n = std::log(big_n);
  const Complex n_pow = std::exp(-s * log_n);  // N^-s
  p.pole_term = n_pow * big_n;
  Complex rest = 0.5 * n_pow;
  Complex factor = s * n_pow / big_n;  // s N^(-s-1)
  for (std::size_t k = 0; k < kEulerMaclaurin.size(); ++k) {
    rest += kEulerMaclaurin[k] * factor;
    const double j = 2.0 * static_cast<double>(k) + 1.0;
    factor *= (s + j) * (s + j + 1.0) / (big_n * big_n);
  }
  p.rest = rest;
  return p;
}

Complex zeta_right(Complex s) {
  const EmParts p = euler_maclaurin(s);
  return p.head + p.pole_term / (s - 1.0) + p.rest;
}

Complex zeta_times_s_minus_one_right(Complex s) {
  const EmParts p = euler_maclaurin(s);
  return (s - 1.0) * (p.head + p.rest) + p.pole_term;
}

// Illinois iteration inside a sign-change bracket.
double refine_root(double lo, double hi, double f_lo, double f_hi, double tol) {
  for (int i = 0; i < 12; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = hardy_z(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
  }
  int side = 0;
  double c = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100 && hi - lo > tol * 1e-2; ++iter) {
    c = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(c > lo && c < hi)) c = 0.5 * (lo + hi);
    const double fc = hardy_z(c);
    if (fc == 0.0) return c;
    if ((fc < 0.0) == (f_lo < 0.0)) {
      lo = c;
      f_lo = fc;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = c;
      f_hi = fc;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
    if (std::abs(f_lo) < 1e-300 || std::abs(f_hi) < 1e-300) break;
  }
  return std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
}

struct ScanResult {
  std::vector<double> roots;
  int sign_changes = 0;
};

ScanResult scan_chunk(double start, double step, long k_begin, long k_end,
                      double t_end, double tol) {
  ScanResult r;
  double t_prev = std::min(start + k_begin * step, t_end);
  double z_prev = hardy_z(t_prev);
  for (long k = k_begin + 1; k <= k_end; ++k) {
    const double t = std::min(start + k * step, t_end);
    if (t <= t_prev) break;
    const double z = hardy_z(t);
    if (z == 0.0) {
      r.roots.push_back(t);
      ++r.sign_changes;
      // Step over the exact zero so the next bracket starts clean.
      const double t2 = std::min(t + 0.5 * step, t_end);
      t_prev = t2;
      z_prev = hardy_z(t2);
      continue;
    }
    if ((z < 0.0) != (z_prev < 0.0)) {
      r.roots.push_back(refine_root(t_prev, t, z_prev, z, tol));
      ++r.sign_changes;
    }
    t_prev = t;
    z_prev = z;
  }
  return r;
}

ScanResult scan_zeros(double t_start, double t_end, double step, double tol,
                      int jobs) {
  const long n = static_cast<long>(std::ceil((t_end - t_start) / step));
  const int chunks = std::max(1, std::min<int>(jobs, static_cast<int>(n / 16 + 1)));
  std::vector<std::future<ScanResult>> futs;
  std::vector<ScanResult> parts(chunks);
  for (int c = 0; c < chunks; ++c) {
    const long kb = n * c / chunks;
    const long ke = n * (c + 1) / chunks;
    if (chunks == 1) {
      parts[c] = scan_chunk(t_start, step, kb, ke, t_end, tol);
    } else {
      futs.push_back(std::async(std::launch::async, scan_chunk, t_start, step,
                                kb, ke, t_end, tol));
    }
  }
  if (chunks > 1) {
    for (int c = 0; c < chunks; ++c) parts[c] = futs[c].get();
  }
  ScanResult all;
  for (auto& p : parts) {
    all.roots.insert(all.roots.end(), p.roots.begin(), p.roots.end());
    all.sign_changes += p.sign_changes;
  }
  return all;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

void parse_header(const std::string& line, ZeroTable& t) {
  std::istringstream in(line.substr(1));
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    double v = 0.0;
    if (!parse_double(tok.substr(eq + 1), v)) continue;
    const std::string key = tok.substr(0, eq);
    if (key == "height_limit") t.height_limit = v;
    if (key == "tol") t.tolerance = v;
  }
}

ZeroTable read_table(const std::string& path, ZeroSource source) {
  std::ifstream in(path);
  if (!in) throw ParseError("load_zero_table: cannot open " + path, 0);
  ZeroTable table;
  table.source = source;
  table.height_limit = -1.0;
  std::string raw;
  int line_no = 0;
  std::vector<double> gammas;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line[0] == '#') {
      parse_header(line, table);
      continue;
    }
    double g = 0.0;
    if (!parse_double(line, g) || !std::isfinite(g)) {
      throw ParseError("load_zero_table: malformed ordinate at line " +
                           std::to_string(line_no),
                       line_no);
    }
    if (g <= 0.0) {
      throw ParseError("load_zero_table: ordinate must be positive at line " +
                           std::to_string(line_no),
                       line_no);
    }
    if (!gammas.empty() && g <= gammas.back()) {
      throw ParseError("load_zero_table: ordinates not ascending at line " +
                           std::to_string(line_no),
                       line_no);
    }
    gammas.push_back(g);
  }
  std::vector<double> failing;
  for (double g : gammas) {
    if (std::abs(zeta(Complex(0.5, g))) > 1e-6) failing.push_back(g);
  }
  if (!failing.empty()) {
    throw ValidationError("load_zero_table: ordinates are not zeta zeros",
                          failing);
  }
  int idx = 0;
  for (double g : gammas) {
    ZetaZero z;
    z.index = ++idx;
    z.gamma = g;
    z.zeta_prime = zeta_prime_at_zero(z);
    table.zeros.push_back(z);
  }
  if (table.height_limit < 0.0) {
    table.height_limit = gammas.empty() ? 0.0 : gammas.back();
  }
  if (!table.zeros.empty()) table.block_bounds = block_partition(table);
  return table;
}

}  // namespace

Complex zeta(Complex s) {
  if (s == Complex(1.0, 0.0)) {
    throw PoleError("zeta: pole at s = 1", s);
  }
  if (s.real() < 0.0) {
    const Complex c = chi(s);
    if (c == 0.0) return 0.0;
    return c * zeta_right(1.0 - s);
  }
  return zeta_right(s);
}

Complex zeta_times_s_minus_one(Complex s) {
  if (s.real() < 0.0) {
    const Complex c = chi(s);
    if (c == 0.0) return 0.0;
    return (s - 1.0) * c * zeta_right(1.0 - s);
  }
  return zeta_times_s_minus_one_right(s);
}

Complex xi(Complex s) {
  if (s.real() < 0.5) s = 1.0 - s;
  const Complex log_factor = log_gamma(0.5 * s + 1.0) - 0.5 * s * kLogPi;
  return std::exp(log_factor) * zeta_times_s_minus_one_right(s);
}

Complex completed_zeta(Complex s) {
  if (s == Complex(1.0, 0.0)) {
    throw PoleError("completed_zeta: pole at s = 1", s);
  }
  return completed_factor(s) * zeta(s);
}

double hardy_z(double t) {
  if (!(t > 0.0)) throw DomainError("hardy_z: requires t > 0");
  const double th = rs_theta(t);
  const Complex z = Complex(std::cos(th), std::sin(th)) * zeta(Complex(0.5, t));
  return z.real();
}

int ZeroTable::count_below(double t) const {
  return static_cast<int>(std::lower_bound(zeros.begin(), zeros.end(), t,
                                           [](const ZetaZero& z, double v) {
                                             return z.gamma < v;
                                           }) -
                          zeros.begin());
}

ZeroTable ZeroTable::prefix(std::size_t n) const {
  ZeroTable t = *this;
  n = std::min(n, zeros.size());
  t.zeros.resize(n);
  if (n < zeros.size()) {
    t.height_limit = 0.5 * (zeros[n - 1].gamma + zeros[n].gamma);
    if (n == 0) t.height_limit = 0.5 * zeros[0].gamma;
  }
  t.block_bounds = t.zeros.empty() ? std::vector<double>{} : block_partition(t);
  t.argument_count = -1;
  t.sign_changes = static_cast<int>(n);
  return t;
}

ZeroCountReport xi_zero_count(double t, int jobs) {
  ContourOptions opts;
  opts.jobs = jobs;
  return count_zeros_rectangle([](Complex s) { return xi(s); },
                               Complex(-1.0, 0.0), Complex(2.0, t), opts);
}

ZeroTable find_zeros(double t_max, const FindZerosOptions& opts) {
  if (!(t_max >= 10.0 && t_max <= 500.0)) {
    throw DomainError("find_zeros: t_max must lie in [10, 500]");
  }
  // Scan slightly past t_max so that a nudged contour top is still covered.
  const double margin = 0.25;
  double step = opts.grid_step;
  for (int attempt = 0;; ++attempt) {
    const ScanResult scan =
        scan_zeros(10.0, t_max + margin, step, opts.tolerance, opts.jobs);
    int winding = -1;
    int below_top = 0;
    if (opts.cross_check) {
      const ZeroCountReport rep = xi_zero_count(t_max, opts.jobs);
      winding = rep.winding_count;
      const double top = rep.upper_right.imag();
      below_top = static_cast<int>(
          std::lower_bound(scan.roots.begin(), scan.roots.end(), top) -
          scan.roots.begin());
      if (top > t_max + margin) {
        throw ConvergenceError("find_zeros: contour nudged past scan margin");
      }
    }
    if (opts.cross_check && below_top != winding) {
      if (attempt >= opts.max_retries) {
        throw MissedZeroError(
            "find_zeros: sign-change count disagrees with argument principle",
            below_top, winding);
      }
      step *= 0.5;
      continue;
    }
    ZeroTable table;
    table.source = ZeroSource::computed;
    table.height_limit = t_max;
    table.tolerance = opts.tolerance;
    table.grid_step = step;
    int idx = 0;
    for (double g : scan.roots) {
      if (g >= t_max) break;
      ZetaZero z;
      z.index = ++idx;
      z.gamma = g;
      z.zeta_prime = zeta_prime_at_zero(z);
      table.zeros.push_back(z);
    }
    table.sign_changes = idx;
    table.argument_count = opts.cross_check ? winding : -1;
    if (!table.zeros.empty()) table.block_bounds = block_partition(table);
    return table;
  }
}

Complex zeta_prime_cauchy(Complex rho, double radius, int nodes) {
  Complex sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double th = 2.0 * kPi * k / nodes;
    const Complex e(std::cos(th), std::sin(th));
    sum += zeta(rho + radius * e) / e;
  }
  return sum / (radius * nodes);
}

Complex zeta_prime_central(Complex rho, double h) {
  const Complex ih(0.0, h);
  const Complex d = (-zeta(rho + 2.0 * ih) + 8.0 * zeta(rho + ih) -
                     8.0 * zeta(rho - ih) + zeta(rho - 2.0 * ih)) /
                    (12.0 * h);
  return Complex(0.0, -1.0) * d;
}

Complex zeta_prime_at_zero(const ZetaZero& z, double radius) {
  if (z.multiplicity != 1) {
    throw MultipleZeroError("zeta_prime_at_zero: zero is not simple");
  }
  const Complex c = zeta_prime_cauchy(z.rho(), radius, 32);
  if (std::abs(c) < 1e-6) {
    throw MultipleZeroError("zeta_prime_at_zero: |zeta'| below 1e-6");
  }
  const Complex d = zeta_prime_central(z.rho(), radius);
  if (std::abs(c - d) > 1e-8 * std::max(1.0, std::abs(c))) {
    throw ConvergenceError(
        "zeta_prime_at_zero: Cauchy and difference values disagree");
  }
  return c;
}

ZeroTable load_zero_table(const std::string& path) {
  return read_table(path, ZeroSource::ingested);
}

void save_zero_table(const ZeroTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("save_zero_table: cannot write " + path);
  out << "# height_limit=" << format_double(table.height_limit)
      << " tol=" << format_double(table.tolerance) << "\n";
  for (const auto& z : table.zeros) out << format_double(z.gamma) << "\n";
  if (!out) throw ConfigError("save_zero_table: write failed for " + path);
}

ZeroTable cached_zero_table(double t_max, const std::string& cache_dir,
                            const FindZerosOptions& opts) {
  std::string dir = cache_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("SONINE_CACHE_DIR")) dir = env;
  }
  if (dir.empty()) return find_zeros(t_max, opts);
  namespace fs = std::filesystem;
  const fs::path file = fs::path(dir) / ("zeros_T" + format_double(t_max) +
                                         "_tol" + format_double(opts.tolerance) +
                                         ".txt");
  if (fs::exists(file)) {
    try {
      ZeroTable t = read_table(file.string(), ZeroSource::computed);
      if (t.height_limit == t_max && t.tolerance == opts.tolerance) {
        t.sign_changes = static_cast<int>(t.zeros.size());
        return t;
      }
    } catch (const Error&) {
      // Corrupt or stale cache: recompute below.
    }
  }
  ZeroTable t = find_zeros(t_max, opts);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path tmp = file.string() + ".tmp";
  try {
    save_zero_table(t, tmp.string());
    fs::rename(tmp, file, ec);
  } catch (const Error&) {
    // An unwritable cache is not fatal.
  }
  return t;
}

std::vector<double> block_partition(const ZeroTable& table) {
  if (table.zeros.empty()) {
    throw DomainError("block_partition: empty zero table");
  }
  std::vector<double> bounds;
  const auto& z = table.zeros;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    if (z[i + 1].gamma - z[i].gamma < 0.3) continue;
    const double mid = 0.5 * (z[i].gamma + z[i + 1].gamma);
    const double n = static_cast<double>(bounds.size() + 1);
    if (mid > n && (bounds.empty() || mid > bounds.back())) bounds.push_back(mid);
  }
  const double last = z.back().gamma + 1.0;
  if (bounds.empty() || last > bounds.back()) bounds.push_back(last);
  return bounds;
}

}  // namespace sonine
