#include "jsaforge/joint_amplitude.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "jsaforge/errors.hpp"

namespace jsaforge {

using nlohmann::json;

double JointAmplitude::norm() const {
  return std::sqrt(values.squaredNorm() * dx() * dy());
}

void JointAmplitude::renormalize() {
  const double n = norm();
  if (!(n > 0) || !std::isfinite(n))
    throw NumericalFailure("JointAmplitude: cannot normalize zero or non-finite amplitude");
  values /= n;
}

void JointAmplitude::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "x,y,re,im\n";
  out.precision(17);
  for (int i = 0; i < x_grid.n_points; ++i) {
    for (int j = 0; j < y_grid.n_points; ++j) {
      out << x_grid.point(i) << ',' << y_grid.point(j) << ',' << values(i, j).real() << ','
          << values(i, j).imag() << '\n';
    }
  }
}

JointAmplitude JointAmplitude::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> xs, ys, re, im;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double x, y, a, b;
    char c;
    if (!(ss >> x >> c >> y >> c >> a >> c >> b)) throw Error("malformed CSV row in " + path);
    xs.push_back(x);
    ys.push_back(y);
    re.push_back(a);
    im.push_back(b);
  }
  if (xs.empty()) throw Error("empty CSV " + path);
  // rows are row-major over (x, y); y cycles fastest
  int ny = 1;
  while (ny < static_cast<int>(ys.size()) && ys[ny] != ys[0]) ++ny;
  const int nx = static_cast<int>(xs.size()) / ny;
  if (nx * ny != static_cast<int>(xs.size())) throw Error("CSV is not a full grid: " + path);
  JointAmplitude j;
  j.x_grid = Grid1D(xs.front(), xs.back(), nx);
  j.y_grid = Grid1D(ys.front(), ys[ny - 1], ny);
  j.values.resize(nx, ny);
  for (int i = 0; i < nx; ++i)
    for (int k = 0; k < ny; ++k) {
      const int row = i * ny + k;
      j.values(i, k) = Complex(re[row], im[row]);
    }
  return j;
}

namespace {
constexpr const char* kBinaryFormat = "jsaforge-jsa";
constexpr int kBinaryVersion = 1;
}  // namespace

void JointAmplitude::save_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  json header = {
      {"format", kBinaryFormat},
      {"version", kBinaryVersion},
      {"nx", x_grid.n_points},
      {"ny", y_grid.n_points},
      {"x_min", x_grid.min},
      {"x_max", x_grid.max},
      {"y_min", y_grid.min},
      {"y_max", y_grid.max},
      {"layout", "row-major re,im float64 little-endian"},
      {"boundary_warning", boundary_warning},
  };
  out << header.dump() << '\n';
  std::vector<double> buf(2 * y_grid.n_points);
  for (int i = 0; i < x_grid.n_points; ++i) {
    for (int j = 0; j < y_grid.n_points; ++j) {
      buf[2 * j] = values(i, j).real();
      buf[2 * j + 1] = values(i, j).imag();
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(double)));
  }
}

JointAmplitude JointAmplitude::load_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || header.value("format", "") != kBinaryFormat)
    throw Error(path + " is not a jsaforge JSA binary file");
  const int nx = header.at("nx").get<int>();
  const int ny = header.at("ny").get<int>();
  JointAmplitude j;
  j.x_grid = Grid1D(header.at("x_min").get<double>(), header.at("x_max").get<double>(), nx);
  j.y_grid = Grid1D(header.at("y_min").get<double>(), header.at("y_max").get<double>(), ny);
  j.boundary_warning = header.value("boundary_warning", false);
  j.values.resize(nx, ny);
  std::vector<double> buf(2 * ny);
  for (int i = 0; i < nx; ++i) {
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (!in) throw Error("truncated JSA binary file " + path);
    for (int k = 0; k < ny; ++k) j.values(i, k) = Complex(buf[2 * k], buf[2 * k + 1]);
  }
  return j;
}

}  // namespace jsaforge
