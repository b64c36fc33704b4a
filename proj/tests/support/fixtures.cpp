#include "fixtures.hpp"

namespace fixtures {

using hptdyn::AsymmetricHpt;
using hptdyn::AsymmetricRow;
using V = std::vector<double>;

hptdyn::SymmetricHpt pd() {
  return hptdyn::SymmetricHpt(2, 2, {{{2, 0}, {3, 0}}, {{1, 1}, {0, 5}}, {{0, 2}, {0, 1}}});
}

AsymmetricHpt bos() {
  return AsymmetricHpt(1, 1, 2,
                       {
                           {{{1, 0}, {1, 0}}, {V{3, 0}, V{2, 0}}},
                           {{{1, 0}, {0, 1}}, {V{0, 0}, V{0, 0}}},
                           {{{0, 1}, {1, 0}}, {V{0, 0}, V{0, 0}}},
                           {{{0, 1}, {0, 1}}, {V{0, 2}, V{0, 3}}},
                       });
}

AsymmetricHpt wolfpack() {
  return AsymmetricHpt(1, 1, 2,
                       {
                           {{{1, 0}, {1, 0}}, {V{1.32, 0}, V{1.34, 0}}},
                           {{{1, 0}, {0, 1}}, {V{0.82, 0}, V{0, 1.53}}},
                           {{{0, 1}, {1, 0}}, {V{0, 1.53}, V{0.81, 0}}},
                           {{{0, 1}, {0, 1}}, {V{0, 0.74}, V{0, 0.72}}},
                       });
}

AsymmetricHpt starcraft() {
  return AsymmetricHpt(2, 1, 2,
                       {
                           {{{2, 0}, {1, 0}}, {V{104.5, 0}, V{-209.0, 0}}},
                           {{{2, 0}, {0, 1}}, {V{117.3, 0}, V{0, -234.6}}},
                           {{{1, 1}, {1, 0}}, {V{68.2, 50.7}, V{-118.9, 0}}},
                           {{{1, 1}, {0, 1}}, {V{93.4, 56.4}, V{0, -149.8}}},
                           {{{0, 2}, {1, 0}}, {V{0, 52.7}, V{-105.4, 0}}},
                           {{{0, 2}, {0, 1}}, {V{0, 70.4}, V{0, -140.8}}},
                       });
}

std::string path(const std::string& name) { return std::string(HPTDYN_FIXTURE_DIR) + "/" + name; }

}  // namespace fixtures
