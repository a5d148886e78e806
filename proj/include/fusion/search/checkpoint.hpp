#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fusion/io.hpp"
#include "fusion/ring.hpp"
#include "fusion/search/backtrack.hpp"

namespace fusion::search {

/// Where an interrupted enumeration stopped. Runs over s are done in
/// decreasing order, so every s above `self_dual` is already complete.
struct Checkpoint {
  int rank = 0;
  int multiplicity = 0;
  int self_dual = 0;
  std::uint64_t plan_hash = 0;
  SearchState state;
};

/// Text format, one field per line:
///   fusion-enumerate-checkpoint v1
///   rank R / multiplicity M / self_dual S / plan HASH
///   counters D v0 v1 ... vD
inline std::string checkpoint_to_string(const Checkpoint& cp) {
  std::ostringstream o;
  o << "fusion-enumerate-checkpoint v1\n"
    << "rank " << cp.rank << "\n"
    << "multiplicity " << cp.multiplicity << "\n"
    << "self_dual " << cp.self_dual << "\n"
    << "plan " << cp.plan_hash << "\n"
    << "counters " << cp.state.depth;
  for (int v : cp.state.values) o << ' ' << v;
  o << "\n";
  return o.str();
}

inline Checkpoint checkpoint_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string magic, version, key;
  Checkpoint cp;
  auto expect = [&](const char* name) {
    if (!(in >> key) || key != name) throw io_error(std::string("checkpoint: expected '") + name + "'");
  };
  if (!(in >> magic >> version) || magic != "fusion-enumerate-checkpoint" || version != "v1")
    throw io_error("checkpoint: bad header");
  expect("rank");
  in >> cp.rank;
  expect("multiplicity");
  in >> cp.multiplicity;
  expect("self_dual");
  in >> cp.self_dual;
  expect("plan");
  in >> cp.plan_hash;
  expect("counters");
  in >> cp.state.depth;
  if (!in || cp.state.depth < -1) throw io_error("checkpoint: bad counters");
  cp.state.values.resize(static_cast<std::size_t>(cp.state.depth + 1));
  for (int& v : cp.state.values)
    if (!(in >> v)) throw io_error("checkpoint: truncated counters");
  return cp;
}

inline std::string partial_path(const std::string& checkpoint_path) {
  return checkpoint_path + ".partial.json";
}

/// Writes the checkpoint and, beside it, the rings found before the stop.
inline void save_checkpoint(const std::string& path, const Checkpoint& cp,
                            const std::vector<FusionRing>& found) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << checkpoint_to_string(cp);
  if (!out) throw io_error("write failed for " + path);
  write_json_file(partial_path(path), catalog_to_json(found));
}

inline Checkpoint load_checkpoint(const std::string& path, std::vector<FusionRing>* found = nullptr) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Checkpoint cp = checkpoint_from_string(buf.str());
  if (found) *found = read_catalog(partial_path(path));
  return cp;
}

}  // namespace fusion::search
