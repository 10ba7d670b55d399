#pragma once

#include <string>

#include "fiotk/grid.hpp"

namespace fiotk {

void write_field(const std::string& path, const GridField& field);
GridField read_field(const std::string& path);

}  // namespace fiotk
