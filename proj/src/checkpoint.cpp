#include "qns/checkpoint.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace qns {

namespace {

constexpr char kMagic[] = "QNS1";

std::string fmt_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void to_little(std::vector<double>& buf) {
  if constexpr (std::endian::native == std::endian::big) {
    for (double& x : buf) {
      std::uint64_t u;
      std::memcpy(&u, &x, 8);
      u = __builtin_bswap64(u);
      std::memcpy(&x, &u, 8);
    }
  }
}

}  // namespace

void write_checkpoint(const Checkpoint& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);

  std::ostringstream header;
  header << kMagic << ' ' << c.grid.dim << ' ' << c.grid.n << ' '
         << fmt_real(c.grid.length) << ' ' << fmt_real(c.params.gamma) << ' '
         << fmt_real(c.params.nu) << ' ' << fmt_real(c.params.kappa) << ' '
         << fmt_real(c.t) << ' ' << c.formulation << '\n';
  out << header.str();

  std::vector<double> buf;
  buf.reserve(c.grid.cells() * (1 + c.grid.dim));
  buf.insert(buf.end(), c.rho.v.begin(), c.rho.v.end());
  for (const auto& comp : c.mom.comp)
    buf.insert(buf.end(), comp.v.begin(), comp.v.end());
  to_little(buf);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
  if (!out) throw IoError("write failed: " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);

  std::string header;
  if (!std::getline(in, header)) throw FormatError("missing header line");
  std::istringstream hs(header);
  std::string magic, formulation;
  int dim = 0, n = 0;
  double length = 0, gamma = 0, nu = 0, kappa = 0, t = 0;
  if (!(hs >> magic >> dim >> n >> length >> gamma >> nu >> kappa >> t >>
        formulation) ||
      magic != kMagic)
    throw FormatError("bad checkpoint header: '" + header + "'");

  Checkpoint c;
  try {
    c.grid = make_grid(dim, n, length);
  } catch (const InvalidGrid& e) {
    throw FormatError(std::string("bad checkpoint shape: ") + e.what());
  }
  c.params = PhysParams{nu, kappa, gamma};
  c.t = t;
  c.formulation = formulation;

  const std::size_t count = c.grid.cells() * (1 + static_cast<std::size_t>(dim));
  std::vector<double> buf(count);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  const std::size_t got = static_cast<std::size_t>(in.gcount());
  if (got != count * sizeof(double))
    throw FormatError("truncated payload: expected " +
                      std::to_string(count * sizeof(double)) + " bytes, found " +
                      std::to_string(got));
  char extra;
  if (in.read(&extra, 1))
    throw FormatError("trailing bytes after payload");
  to_little(buf);  // involution: little->native on big-endian hosts

  c.rho = ScalarField(c.grid);
  c.mom = VectorField(c.grid);
  const std::size_t cells = c.grid.cells();
  std::copy(buf.begin(), buf.begin() + cells, c.rho.v.begin());
  for (int d = 0; d < dim; ++d)
    std::copy(buf.begin() + cells * (1 + d), buf.begin() + cells * (2 + d),
              c.mom.comp[d].v.begin());
  return c;
}

Checkpoint read_checkpoint(const std::string& path, const Grid& expected) {
  Checkpoint c = read_checkpoint(path);
  if (!(c.grid == expected))
    throw FormatError("checkpoint shape (dim=" + std::to_string(c.grid.dim) +
                      ", n=" + std::to_string(c.grid.n) +
                      ") does not match the requested grid (dim=" +
                      std::to_string(expected.dim) +
                      ", n=" + std::to_string(expected.n) + ")");
  return c;
}

}  // namespace qns
