#include "discflow/field_io.hpp"

#include <cstdio>
#include <fstream>

#include "discflow/errors.hpp"

namespace discflow {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

struct Coordinate {
  std::string label;
  std::vector<double> values;
};

Coordinate coordinate_of(const FourierField& f) {
  if (auto* rg = dynamic_cast<const RadialGrid*>(&f.grid())) {
    if (rg->kind() == RadialCoordinate::Radius) return {"r", rg->r()};
    return {"s", rg->s()};
  }
  return {"zeta", f.grid().nodes()};
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Config, "cannot open " + path + " for writing");
  return os;
}

}  // namespace

void write_nodal_csv(std::ostream& os, const FourierField& f, const ThetaGrid& tg) {
  const Coordinate c = coordinate_of(f);
  const auto v = to_nodal(f, tg);
  os << "theta," << c.label << ",value\n";
  for (int j = 0; j < tg.n_nodes(); ++j)
    for (std::size_t i = 0; i < f.n_points(); ++i)
      os << format_double(tg.node(j)) << ',' << format_double(c.values[i]) << ','
         << format_double(v[static_cast<std::size_t>(j) * f.n_points() + i]) << '\n';
}

void write_modes_csv(std::ostream& os, const FourierField& f) {
  const Coordinate c = coordinate_of(f);
  os << "mode,kind," << c.label << ",value\n";
  for (int k = 0; k <= f.n_modes(); ++k) {
    for (int part = 0; part < (k == 0 ? 1 : 2); ++part) {
      auto p = part == 0 ? f.a(k) : f.b(k);
      for (std::size_t i = 0; i < f.n_points(); ++i)
        os << k << ',' << (part == 0 ? "cos" : "sin") << ',' << format_double(c.values[i]) << ','
           << format_double(p[i]) << '\n';
    }
  }
}

void write_nodal_csv(const std::string& path, const FourierField& f, const ThetaGrid& tg) {
  auto os = open_or_throw(path);
  write_nodal_csv(os, f, tg);
}

void write_modes_csv(const std::string& path, const FourierField& f) {
  auto os = open_or_throw(path);
  write_modes_csv(os, f);
}

}  // namespace discflow
