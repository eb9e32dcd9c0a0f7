#include "attopmm/io/cube.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "attopmm/error.hpp"
#include "attopmm/units.hpp"

namespace attopmm::io {

namespace {

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  std::string next(const char* what) {
    std::string line;
    if (!std::getline(in_, line)) {
      throw Error(ErrorKind::Parse, fmt::format("cube: unexpected end of file, expected {}", what), line_no_ + 1);
    }
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }
  bool next_optional(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    return true;
  }
  int line() const { return line_no_; }

 private:
  std::istringstream in_;
  int line_no_ = 0;
};

std::vector<double> numbers(const std::string& line, std::size_t expected, const char* what, int line_no) {
  std::istringstream ss(line);
  std::vector<double> out;
  std::string tok;
  while (ss >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, fmt::format("cube: malformed {}: '{}' is not a number", what, tok), line_no);
    }
  }
  if (out.size() < expected) {
    throw Error(ErrorKind::Parse, fmt::format("cube: malformed {}: expected {} fields, found {}", what, expected,
                                              out.size()),
                line_no);
  }
  return out;
}

}  // namespace

std::string format_cube(const VolumetricGrid<double>& grid, const std::vector<Atom>& atoms,
                        const std::string& comment1, const std::string& comment2) {
  std::string out;
  out.reserve(grid.size() * 14 + 1024);
  out += comment1 + "\n" + comment2 + "\n";
  const auto& o = grid.origin();
  out += fmt::format("{:5d}{:12.6f}{:12.6f}{:12.6f}\n", static_cast<int>(atoms.size()), o[0], o[1], o[2]);
  for (int a = 0; a < 3; ++a) {
    const auto v = grid.axes().col(a);
    out += fmt::format("{:5d}{:12.6f}{:12.6f}{:12.6f}\n", grid.counts()[a], v[0], v[1], v[2]);
  }
  for (const auto& atom : atoms) {
    out += fmt::format("{:5d}{:12.6f}{:12.6f}{:12.6f}{:12.6f}\n", atom.atomic_number,
                       static_cast<double>(atom.atomic_number), atom.position[0], atom.position[1], atom.position[2]);
  }
  const int nz = grid.counts()[2];
  const auto& v = grid.values();
  for (std::size_t start = 0; start < v.size(); start += static_cast<std::size_t>(nz)) {
    for (int k = 0; k < nz; ++k) {
      out += fmt::format(" {:12.5E}", v[start + k]);
      if (k % 6 == 5 || k == nz - 1) out += '\n';
    }
  }
  return out;
}

void write_cube(const std::filesystem::path& path, const VolumetricGrid<double>& grid, const std::vector<Atom>& atoms,
                const std::string& comment1, const std::string& comment2) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, fmt::format("cannot open '{}' for writing", path.string()));
  f << format_cube(grid, atoms, comment1, comment2);
  if (!f) throw Error(ErrorKind::Io, fmt::format("failed writing '{}'", path.string()));
}

CubeFile parse_cube(const std::string& text) {
  LineReader r(text);
  CubeFile cube;
  cube.comment1 = r.next("first comment line");
  cube.comment2 = r.next("second comment line");

  const std::string head_line = r.next("atom count and origin");
    auto head = numbers(head_line, 4, "atom count and origin", r.line());
  const int natoms_signed = static_cast<int>(head[0]);
  if (head[0] != natoms_signed) throw Error(ErrorKind::Parse, "cube: atom count is not an integer", r.line());
  const int natoms = std::abs(natoms_signed);
  Eigen::Vector3d origin(head[1], head[2], head[3]);

  std::array<int, 3> counts{};
  Eigen::Matrix3d axes;
  bool angstrom = false;
  for (int a = 0; a < 3; ++a) {
    const std::string f_line = r.next("axis line");
    auto f = numbers(f_line, 4, "axis line", r.line());
    const int n = static_cast<int>(f[0]);
    if (n == 0 || f[0] != n) throw Error(ErrorKind::Parse, "cube: malformed axis line: bad point count", r.line());
    if (n < 0) angstrom = true;
    counts[a] = std::abs(n);
    axes.col(a) = Eigen::Vector3d(f[1], f[2], f[3]);
  }
  if (angstrom) {
    axes /= units::bohr_in_angstrom;
    origin /= units::bohr_in_angstrom;
  }
  for (int i = 0; i < natoms; ++i) {
    const std::string f_line = r.next("atom line");
    auto f = numbers(f_line, 5, "atom line", r.line());
    Eigen::Vector3d pos(f[2], f[3], f[4]);
    if (angstrom) pos /= units::bohr_in_angstrom;
    cube.atoms.push_back({static_cast<int>(f[0]), pos});
    cube.nuclear_charges.push_back(f[1]);
  }
  if (natoms_signed < 0) {
    const std::string f_line = r.next("orbital index line");
    auto f = numbers(f_line, 1, "orbital index line", r.line());
    if (f[0] != 1) throw Error(ErrorKind::Unsupported, "cube: only one orbital per file is supported", r.line());
  }

  const std::size_t total = static_cast<std::size_t>(counts[0]) * counts[1] * counts[2];
  std::vector<double> values;
  values.reserve(total);
  std::string line;
  while (r.next_optional(line)) {
    auto f = numbers(line, 0, "value payload", r.line());
    if (values.size() + f.size() > total) {
      throw Error(ErrorKind::Parse, fmt::format("cube: count mismatch: more than {} values", total), r.line());
    }
    values.insert(values.end(), f.begin(), f.end());
  }
  if (values.size() != total) {
    throw Error(ErrorKind::Parse, fmt::format("cube: count mismatch: expected {} values, found {}", total,
                                              values.size()),
                r.line());
  }
  cube.grid = VolumetricGrid<double>(origin, axes, counts, std::move(values));
  return cube;
}

CubeFile read_cube(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return parse_cube(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), fmt::format("{}: {}", path.string(), e.what()), e.line());
  }
}

}  // namespace attopmm::io
