#pragma once

// The general-store world built in code, independent of the mission loader.

#include "agc/world/world.hpp"

#include <string>

namespace agc::testing {

/// `full_front`: LF is covered by {L1, L3, L4}; otherwise by {L3} only.
inline world::WorldModel store_world(bool full_front = false) {
  using world::TypeKind;
  world::WorldModel w;
  for (const char *id : {"LF", "LB", "LE", "L1", "L2", "L3", "L4", "L5"}) {
    w.add_type(id, TypeKind::Location);
  }
  w.add_type("S", TypeKind::Sensor);
  w.add_type("G", TypeKind::Action);
  w.add_mutex("LF", "LB");
  w.add_mutex("LB", "LE");
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      w.add_mutex("L" + std::to_string(i), "L" + std::to_string(j));
    }
  }
  w.add_adjacency("LB", "LF");
  w.add_adjacency("LF", "LE");
  w.add_adjacency("L1", "L2");
  w.add_adjacency("L1", "L3");
  w.add_adjacency("L3", "L4");
  w.add_adjacency("L3", "L5");
  w.add_extension("L2", "LE");
  w.add_extension("L3", "LF");
  w.add_extension("L5", "LB");
  if (full_front) {
    w.add_extension("L1", "LF");
    w.add_extension("L4", "LF");
    w.add_covering("LF", {"L1", "L3", "L4"});
  } else {
    w.add_covering("LF", {"L3"});
  }
  w.add_covering("LB", {"L5"});
  w.add_covering("LE", {"L2"});
  return w;
}

} // namespace agc::testing
