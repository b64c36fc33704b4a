#pragma once

#include <string>

#include "hptdyn/table.hpp"

// The reference tables, built in code so tests do not depend on the loader.
namespace fixtures {

hptdyn::SymmetricHpt pd();
hptdyn::AsymmetricHpt bos();
hptdyn::AsymmetricHpt wolfpack();
hptdyn::AsymmetricHpt starcraft();

std::string path(const std::string& name);

}  // namespace fixtures
