#pragma once

#include <ostream>
#include <string>

#include "discflow/fourier_field.hpp"

namespace discflow {

// Shortest decimal text that round-trips the double (17 significant digits).
std::string format_double(double x);

// theta,<coord>,value on the nodal theta grid.
void write_nodal_csv(std::ostream& os, const FourierField& f, const ThetaGrid& tg);
// mode,kind,<coord>,value with kind in {cos, sin}.
void write_modes_csv(std::ostream& os, const FourierField& f);

void write_nodal_csv(const std::string& path, const FourierField& f, const ThetaGrid& tg);
void write_modes_csv(const std::string& path, const FourierField& f);

}  // namespace discflow
