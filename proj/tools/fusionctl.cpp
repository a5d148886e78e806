// fusionctl: enumerate, analyze and construct fusion rings.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fusion/fusion.hpp"

namespace {

using nlohmann::json;
using namespace fusion;

enum Exit : int {
  ok = 0,
  failed = 1,       // command ran, result negative (e.g. invalid ring)
  config_error = 2,
  io_failure = 3,
  interrupted = 4,  // checkpoint written
};

struct Config {
  unsigned precision = default_digits;
  std::uint64_t seed = 0;
  int threads = 1;
  std::string checkpoint;
  std::string output;
  std::string format = "summary";
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::pair<int, int> parse_range(const std::string& s, const char* what) {
  try {
    std::size_t pos = s.find('-');
    if (pos == std::string::npos) pos = s.find("..");
    if (pos == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    const std::size_t skip = s[pos] == '-' ? 1 : 2;
    const int lo = std::stoi(s.substr(0, pos)), hi = std::stoi(s.substr(pos + skip));
    if (lo > hi) throw ConfigError(std::string(what) + " range is empty: " + s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ConfigError(std::string("cannot parse ") + what + " range '" + s + "'");
  }
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  if (s.empty() || s == "-") return out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    try {
      out.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
      throw ConfigError("cannot parse integer list '" + s + "'");
    }
  return out;
}

/// Emits the command's JSON document per --output / --format.
void emit(const Config& cfg, const json& doc) {
  if (!cfg.output.empty()) write_json_file(cfg.output, doc);
  if (cfg.format == "catalog" && cfg.output.empty()) std::cout << doc.dump(1) << '\n';
}

/// A file holding either one ring record or a catalog array. Records that
/// fail to parse are reported, not fatal.
struct Loaded {
  std::vector<std::optional<FusionRing>> rings;
  std::vector<json> records;
  std::vector<std::string> errors;
};

Loaded load_rings(const std::string& path) {
  const json doc = read_json_file(path);
  Loaded out;
  const json arr = doc.is_array() ? doc : json::array({doc});
  for (const auto& rec : arr) {
    out.records.push_back(rec);
    try {
      out.rings.emplace_back(ring_from_json(rec));
      out.errors.emplace_back();
    } catch (const std::exception& e) {
      out.rings.emplace_back(std::nullopt);
      out.errors.emplace_back(e.what());
    }
  }
  return out;
}

std::string label(const json& rec, std::size_t k) {
  if (rec.is_object() && rec.contains("name") && rec["name"].is_string()) return rec["name"].get<std::string>();
  return "#" + std::to_string(k + 1);
}

// --- enumerate ---------------------------------------------------------------

struct EnumerateArgs {
  std::string rank = "1-4";
  std::string multiplicity = "1";
  int self_dual = -1;
  std::uint64_t node_budget = 0;
  bool quiet = false;
};

int cmd_enumerate(const Config& cfg, const EnumerateArgs& args) {
  const auto [rlo, rhi] = parse_range(args.rank, "rank");
  const auto [mlo, mhi] = parse_range(args.multiplicity, "multiplicity");
  if (rlo < 1 || mlo < 1) throw ConfigError("rank and multiplicity must be at least 1");

  std::optional<search::Checkpoint> resume;
  std::vector<FusionRing> resume_rings;
  if (!cfg.checkpoint.empty() && std::filesystem::exists(cfg.checkpoint)) {
    resume = search::load_checkpoint(cfg.checkpoint, &resume_rings);
    if (resume->multiplicity != mhi || resume->rank < rlo || resume->rank > rhi)
      throw ConfigError("checkpoint " + cfg.checkpoint + " belongs to rank " + std::to_string(resume->rank) +
                        ", multiplicity " + std::to_string(resume->multiplicity));
    std::cerr << "resuming rank " << resume->rank << " at self-dual count " << resume->self_dual << "\n";
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<FusionRing> catalog;
  std::map<std::pair<int, int>, int> cells;  // (m, r) -> count
  std::ostringstream runs;
  for (int r = rlo; r <= rhi; ++r) {
    search::EnumerateOptions opt;
    opt.threads = cfg.threads;
    if (args.node_budget) opt.node_budget = args.node_budget;
    if (resume && resume->rank == r) {
      opt.resume = resume;
      opt.resume_rings = resume_rings;
    }
    if (!args.quiet)
      opt.progress = [r](int s, std::uint64_t nodes) {
        std::cerr << "  rank " << r << " s=" << s << ": " << nodes << " nodes\n";
      };
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = search::enumerate_rings(r, mhi, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (res.rejected) throw std::logic_error("search produced tables failing validation");

    for (const auto& run : res.runs)
      runs << "r=" << r << " m<=" << mhi << " s=" << run.self_dual << "  variables " << run.variables << "  raw "
           << run.raw << "  distinct " << run.distinct << "  nodes " << run.nodes
           << (run.complete ? "" : "  (interrupted)") << "\n";
    runs << "r=" << r << " time " << secs << " s\n";

    if (!res.complete) {
      if (cfg.checkpoint.empty()) {
        std::cerr << "node budget exhausted; no --checkpoint given, progress discarded\n";
        return interrupted;
      }
      search::save_checkpoint(cfg.checkpoint, *res.checkpoint, res.rings);
      std::cerr << "node budget exhausted; checkpoint written to " << cfg.checkpoint << "\n";
      std::cout << runs.str();
      return interrupted;
    }
    for (const auto& R : res.rings) {
      const int m = R.multiplicity();
      if (m < mlo || m > mhi) continue;
      if (args.self_dual >= 0 && R.self_dual_count() != args.self_dual) continue;
      ++cells[{m, r}];
      catalog.push_back(R);
    }
  }
  if (!cfg.checkpoint.empty() && std::filesystem::exists(cfg.checkpoint)) {
    std::filesystem::remove(cfg.checkpoint);
    std::filesystem::remove(search::partial_path(cfg.checkpoint));
  }
  sort_catalog(catalog);
  const auto names = catalog_names(catalog);
  json doc = json::array();
  for (std::size_t i = 0; i < catalog.size(); ++i) doc.push_back(ring_to_json(catalog[i], names[i].str()));
  emit(cfg, doc);

  if (cfg.format == "summary") {
    std::cout << "rings per multiplicity (rows) and rank (columns)\n";
    std::cout << "m\\r";
    for (int r = rlo; r <= rhi; ++r) std::cout << '\t' << r;
    std::cout << "\ttotal\n";
    for (int m = mlo; m <= mhi; ++m) {
      std::cout << m;
      int total = 0;
      for (int r = rlo; r <= rhi; ++r) {
        const int c = cells.count({m, r}) ? cells[{m, r}] : 0;
        total += c;
        std::cout << '\t' << c;
      }
      std::cout << '\t' << total << '\n';
    }
    std::cout << runs.str();
    std::cout << "total " << catalog.size() << " rings in "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  }
  return ok;
}

// --- analyze / criteria / modular -------------------------------------------

json criteria_record(const Config& cfg, const FusionRing& R, const CharacterTable* chars) {
  json rec;
  const auto zsc = zero_spectrum(R, cfg.threads);
  rec["zsc"] = zsc ? "obstructed" : "clear";
  if (zsc) rec["zsc_witness"] = zsc->indices;
  if (!chars) {
    rec["cspc"] = "n/a";
  } else {
    const auto cspc = schur_product(R, *chars);
    rec["cspc"] = cspc ? "obstructed" : "clear";
    if (cspc) rec["cspc_witness"] = {{"rows", cspc->indices}, {"sum", cspc->value}};
  }
  return rec;
}

int cmd_analyze(const Config& cfg, const std::string& path) {
  const Loaded in = load_rings(path);
  PrecisionGuard guard(cfg.precision);
  json doc = json::array();
  int bad = 0;
  for (std::size_t k = 0; k < in.rings.size(); ++k) {
    json rec = in.records[k];
    if (!in.rings[k]) {
      rec["error"] = in.errors[k];
      std::cerr << label(rec, k) << ": " << in.errors[k] << "\n";
      ++bad;
      doc.push_back(rec);
      continue;
    }
    const FusionRing& R = *in.rings[k];
    try {
      const auto report = validate(R);
      if (!report.valid) throw std::invalid_argument(std::string("not a fusion ring (") +
                                                     std::string(axiom_name(report.violations[0].axiom)) + ")");
      const bool comm = is_commutative(R);
      const auto fp = fp_dimensions<Real>(R, power_of_ten(-40));
      rec["commutative"] = comm;
      json dims = json::array();
      for (const auto& d : fp.d) dims.push_back(decimal(d, 30));
      rec["fp_dimensions"] = dims;
      rec["global_dimension"] = decimal(fp.global, 30);
      rec["subgroup_order"] = invertible_subgroup(R).size();
      rec["subring_count"] = sub_fusion_rings(R).size();
      std::optional<CharacterTable> chars;
      if (comm) chars = character_table(R, cfg.precision, cfg.seed);
      const json crit = criteria_record(cfg, R, chars ? &*chars : nullptr);
      for (auto it = crit.begin(); it != crit.end(); ++it) rec[it.key()] = it.value();
      if (chars) {
        const auto md = modular_data(R, *chars);
        rec["modular_data"] = md.data.size();
        if (md.infinite_family) rec["vafa_free_directions"] = true;
        if (md.truncated) rec["vafa_truncated"] = true;
      } else {
        rec["modular_data"] = nullptr;
      }
    } catch (const std::exception& e) {
      rec["error"] = e.what();
      std::cerr << label(rec, k) << ": " << e.what() << "\n";
      ++bad;
    }
    doc.push_back(rec);
  }
  emit(cfg, doc);
  if (cfg.format == "summary") {
    for (std::size_t k = 0; k < doc.size(); ++k) {
      const json& rec = doc[k];
      std::cout << label(rec, k);
      if (rec.contains("error")) {
        std::cout << "  error: " << rec["error"].get<std::string>() << '\n';
        continue;
      }
      std::cout << "  rank " << rec["rank"] << "  commutative " << (rec["commutative"].get<bool>() ? "yes" : "no")
                << "  D^2 " << rec["global_dimension"].get<std::string>().substr(0, 12) << "  subgroup "
                << rec["subgroup_order"] << "  subrings " << rec["subring_count"] << "  zsc "
                << rec["zsc"].get<std::string>() << "  cspc " << rec["cspc"].get<std::string>() << "  modular "
                << rec["modular_data"] << '\n';
    }
  }
  return bad ? failed : ok;
}

int cmd_criteria(const Config& cfg, const std::string& path) {
  const Loaded in = load_rings(path);
  PrecisionGuard guard(cfg.precision);
  json doc = json::array();
  int bad = 0;
  for (std::size_t k = 0; k < in.rings.size(); ++k) {
    json rec = {{"ring", label(in.records[k], k)}};
    try {
      if (!in.rings[k]) throw std::invalid_argument(in.errors[k]);
      const FusionRing& R = *in.rings[k];
      if (!is_valid(R)) throw std::invalid_argument("not a fusion ring");
      std::optional<CharacterTable> chars;
      if (is_commutative(R)) chars = character_table(R, cfg.precision, cfg.seed);
      rec.update(criteria_record(cfg, R, chars ? &*chars : nullptr));
    } catch (const std::exception& e) {
      rec["error"] = e.what();
      ++bad;
    }
    if (cfg.format == "summary") {
      std::cout << rec["ring"].get<std::string>();
      if (rec.contains("error")) std::cout << "  error: " << rec["error"].get<std::string>();
      else {
        std::cout << "  zsc " << rec["zsc"].get<std::string>();
        if (rec.contains("zsc_witness")) std::cout << ' ' << rec["zsc_witness"].dump();
        std::cout << "  cspc " << rec["cspc"].get<std::string>();
        if (rec.contains("cspc_witness")) std::cout << ' ' << rec["cspc_witness"]["rows"].dump();
      }
      std::cout << '\n';
    }
    doc.push_back(rec);
  }
  emit(cfg, doc);
  return bad ? failed : ok;
}

int cmd_modular(const Config& cfg, const std::string& path) {
  const Loaded in = load_rings(path);
  PrecisionGuard guard(cfg.precision);
  json doc = json::array();
  int bad = 0;
  for (std::size_t k = 0; k < in.rings.size(); ++k) {
    json rec = {{"ring", label(in.records[k], k)}};
    try {
      if (!in.rings[k]) throw std::invalid_argument(in.errors[k]);
      const FusionRing& R = *in.rings[k];
      if (!is_valid(R)) throw std::invalid_argument("not a fusion ring");
      if (!is_commutative(R)) throw std::domain_error("modular data needs a commutative ring");
      const auto chars = character_table(R, cfg.precision, cfg.seed);
      const auto md = modular_data(R, chars);
      rec["s_matrices"] = md.s_count;
      rec["t_candidates"] = md.t_count;
      rec["vafa_free_directions"] = md.infinite_family;
      rec["vafa_truncated"] = md.truncated;
      json data = json::array();
      for (const auto& d : md.data) data.push_back(modular_datum_to_json(d, static_cast<int>(cfg.precision)));
      rec["data"] = data;
    } catch (const std::exception& e) {
      rec["error"] = e.what();
      ++bad;
    }
    if (cfg.format == "summary") {
      std::cout << rec["ring"].get<std::string>();
      if (rec.contains("error")) std::cout << "  error: " << rec["error"].get<std::string>() << '\n';
      else {
        std::cout << "  S " << rec["s_matrices"] << "  T " << rec["t_candidates"] << "  modular " << rec["data"].size()
                  << '\n';
        for (const auto& d : rec["data"]) std::cout << "    t = " << d["t"].dump() << '\n';
      }
    }
    doc.push_back(rec);
  }
  emit(cfg, doc);
  return bad ? failed : ok;
}

// --- name / validate --------------------------------------------------------

int cmd_name(const Config& cfg, const std::string& path, int check_up_to) {
  std::vector<FusionRing> catalog = read_catalog(path);
  sort_catalog(catalog);
  const auto names = catalog_names(catalog);

  // Naming is positional, so every (r, m, n) cell must be complete.
  std::set<std::tuple<int, int, int>> incomplete;
  std::map<std::pair<int, int>, std::vector<FusionRing>> reference;
  for (const auto& R : catalog) {
    const int r = R.rank(), m = R.multiplicity();
    if (r > check_up_to) {
      continue;
    }
    if (!reference.count({r, m})) {
      search::EnumerateOptions opt;
      opt.threads = cfg.threads;
      reference[{r, m}] = search::enumerate_rings(r, m, opt).exact();
    }
  }
  for (const auto& [rm, rings] : reference) {
    std::map<int, std::set<std::vector<int>>> want, have;
    for (const auto& R : rings) want[R.non_self_dual_count()].insert(canonical_form(R).digits);
    for (const auto& R : catalog)
      if (R.rank() == rm.first && R.multiplicity() == rm.second)
        have[R.non_self_dual_count()].insert(canonical_form(R).digits);
    for (const auto& [n, codes] : have)
      if (codes != want[n]) incomplete.insert({rm.first, rm.second, n});
  }

  json doc = json::array();
  std::set<std::tuple<int, int, int>> unverified;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const FusionRing& R = catalog[i];
    const auto cell = std::make_tuple(R.rank(), R.multiplicity(), R.non_self_dual_count());
    if (R.rank() > check_up_to) unverified.insert(cell);
    if (incomplete.count(cell)) doc.push_back(ring_to_json(R));
    else doc.push_back(ring_to_json(R, names[i].str()));
  }
  for (const auto& [r, m, n] : incomplete)
    std::cerr << "warning: cell (r=" << r << ", m=" << m << ", n=" << n
              << ") is incomplete; names withheld\n";
  for (const auto& [r, m, n] : unverified)
    std::cerr << "note: cell (r=" << r << ", m=" << m << ", n=" << n << ") assumed complete (not checked)\n";
  emit(cfg, doc);
  if (cfg.format == "summary")
    for (std::size_t i = 0; i < doc.size(); ++i)
      std::cout << (doc[i].contains("name") ? doc[i]["name"].get<std::string>() : "(unnamed)") << "  rank "
                << catalog[i].rank() << "  nonzero " << catalog[i].nonzero_count() << '\n';
  return ok;
}

int cmd_validate(const Config& cfg, const std::string& path) {
  const Loaded in = load_rings(path);
  json doc = json::array();
  int bad = 0;
  for (std::size_t k = 0; k < in.rings.size(); ++k) {
    json rec = {{"ring", label(in.records[k], k)}};
    if (!in.rings[k]) {
      rec["valid"] = false;
      rec["error"] = in.errors[k];
      ++bad;
    } else {
      const auto rep = validate(*in.rings[k]);
      rec["valid"] = rep.valid;
      json v = json::array();
      for (const auto& viol : rep.violations)
        v.push_back({{"axiom", std::string(axiom_name(viol.axiom))},
                     {"at", std::vector<int>(viol.where.begin(), viol.where.begin() + viol.arity)}});
      rec["violations"] = v;
      if (!rep.valid) ++bad;
    }
    if (cfg.format == "summary") {
      std::cout << rec["ring"].get<std::string>() << ": " << (rec["valid"].get<bool>() ? "valid" : "INVALID");
      if (rec.contains("error")) std::cout << " (" << rec["error"].get<std::string>() << ")";
      for (const auto& v : rec.value("violations", json::array()))
        std::cout << "  " << v["axiom"].get<std::string>() << " at " << v["at"].dump();
      std::cout << '\n';
    }
    doc.push_back(rec);
  }
  emit(cfg, doc);
  return bad ? failed : ok;
}

// --- construct ----------------------------------------------------------------

FiniteGroup load_group(const std::string& spec) {
  if (std::filesystem::exists(spec)) {
    const json j = read_json_file(spec);
    const json& t = j.is_object() ? j.at("table") : j;
    auto table = t.get<std::vector<std::vector<int>>>();
    for (auto& row : table)
      for (int& x : row) --x;  // files are 1-based
    return make_group(std::move(table), std::filesystem::path(spec).stem().string());
  }
  return named_group(spec);
}

struct ConstructArgs {
  std::string kind;
  std::string group;
  int k = 0;
  int n = 1;
  std::string generators;
  std::string twist = "id";
  int g_tilde = 1;
};

int cmd_construct(const Config& cfg, const ConstructArgs& a) {
  const FiniteGroup G = load_group(a.group);
  FusionRing R;
  if (a.kind == "group") R = group_ring(G);
  else if (a.kind == "ty") R = tambara_yamagami(G);
  else if (a.kind == "near-group") R = near_group(G, a.k);
  else if (a.kind == "hi") {
    if (!G.is_abelian()) throw ConfigError(G.name() + " is not abelian");
    R = haagerup_izumi(G, a.n);
  }
  else {
    std::vector<int> gens = parse_list(a.generators);
    for (int& g : gens) {
      if (g < 1 || g > G.order()) throw ConfigError("generator " + std::to_string(g) + " out of range");
      --g;
    }
    const auto H = generated_subgroup(G, gens);
    if (!is_normal(G, H)) throw song_error("H is not normal in G");
    const CosetSpace cs = coset_space(G, H);
    std::vector<int> A;
    if (a.twist == "id") A = identity_twist(G, H);
    else if (a.twist == "inv") {
      for (int c = 0; c < cs.index(); ++c) A.push_back(cs.coset_of[G.inv(cs.cosets[c][0])]);
    } else {
      A = parse_list(a.twist);
      for (int& x : A) --x;
    }
    if (a.g_tilde < 1 || a.g_tilde > G.order()) throw ConfigError("g~ out of range");
    R = song_extension({G, H, A, a.g_tilde - 1, a.n, {}});
  }
  const auto rep = validate(R);
  emit(cfg, ring_to_json(R));
  if (cfg.format == "summary") {
    std::cout << a.kind << " of " << G.name() << ": rank " << R.rank() << ", multiplicity " << R.multiplicity()
              << ", " << (is_commutative(R) ? "commutative" : "non-commutative") << ", "
              << (rep.valid ? "valid" : "INVALID") << '\n';
    for (int x = 1; x <= R.rank(); ++x) {
      std::cout << "  " << x << ":";
      for (int y = 1; y <= R.rank(); ++y) {
        std::cout << "  ";
        bool first = true;
        for (int z = 1; z <= R.rank(); ++z)
          if (const int c = R.n(x, y, z)) {
            std::cout << (first ? "" : "+") << (c > 1 ? std::to_string(c) + "*" : "") << z;
            first = false;
          }
      }
      std::cout << '\n';
    }
  }
  return rep.valid ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate and analyze fusion rings"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--precision", cfg.precision, "decimal digits for spectral computations")
      ->check(CLI::Range(30u, 100000u));
  app.add_option("--seed", cfg.seed, "seed for random character-table combinations");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--checkpoint", cfg.checkpoint, "checkpoint file (enumerate)");
  app.add_option("--output,-o", cfg.output, "write the JSON result here");
  app.add_option("--format", cfg.format, "catalog: JSON to stdout; summary: readable text")
      ->check(CLI::IsMember({"catalog", "summary"}));

  EnumerateArgs ea;
  auto* en = app.add_subcommand("enumerate", "enumerate fusion rings by rank and multiplicity");
  en->add_option("-r,--rank", ea.rank, "rank or range, e.g. 4 or 1-6")->capture_default_str();
  en->add_option("-m,--multiplicity", ea.multiplicity, "multiplicity or range")->capture_default_str();
  en->add_option("-s,--self-dual", ea.self_dual, "keep only rings with this many self-dual elements");
  en->add_option("--node-budget", ea.node_budget, "stop after this many search nodes per rank");
  en->add_flag("-q,--quiet", ea.quiet, "no progress lines");

  std::string input;
  auto* an = app.add_subcommand("analyze", "dimensions, subgroups, criteria and modular data per ring");
  an->add_option("catalog", input, "ring or catalog file")->required();
  auto* mo = app.add_subcommand("modular", "S and T matrices per ring");
  mo->add_option("catalog", input, "ring or catalog file")->required();
  auto* cr = app.add_subcommand("criteria", "zero-spectrum and Schur product obstructions");
  cr->add_option("catalog", input, "ring or catalog file")->required();
  int check_up_to = 6;
  auto* nm = app.add_subcommand("name", "assign FR^{r,m,n}_i names");
  nm->add_option("catalog", input, "catalog file")->required();
  nm->add_option("--check-up-to-rank", check_up_to, "verify cell completeness by enumeration up to this rank")
      ->capture_default_str();
  auto* va = app.add_subcommand("validate", "check the fusion ring axioms");
  va->add_option("catalog", input, "ring or catalog file")->required();

  ConstructArgs ca;
  auto* co = app.add_subcommand("construct", "build rings from groups");
  co->require_subcommand(1);
  auto* c_group = co->add_subcommand("group", "group ring");
  c_group->add_option("group", ca.group, "Z<n>, D<n>, Q8, products like Z2xZ2, or a table file")->required();
  auto* c_ty = co->add_subcommand("ty", "Tambara-Yamagami ring");
  c_ty->add_option("group", ca.group)->required();
  auto* c_ng = co->add_subcommand("near-group", "near-group ring G + t, t x t = sum G + k t");
  c_ng->add_option("group", ca.group)->required();
  c_ng->add_option("k", ca.k)->required()->check(CLI::NonNegativeNumber);
  auto* c_hi = co->add_subcommand("hi", "Haagerup-Izumi ring of an abelian group");
  c_hi->add_option("group", ca.group)->required();
  c_hi->add_option("n", ca.n, "multiplicity of the sum over T")->check(CLI::NonNegativeNumber);
  auto* c_song = co->add_subcommand("song", "song extension [H <| G]^A_{g~|n}");
  c_song->add_option("group", ca.group)->required();
  c_song->add_option("generators", ca.generators, "generators of H, comma separated 1-based, '-' for trivial")
      ->required();
  c_song->add_option("twist", ca.twist, "A on cosets: id, inv, or 1-based images of cosets")->required();
  c_song->add_option("g_tilde", ca.g_tilde, "1-based element")->required();
  c_song->add_option("n", ca.n)->required()->check(CLI::NonNegativeNumber);
  for (auto* sub : {en, an, mo, cr, nm, va, co}) sub->fallthrough();
  for (auto* sub : {c_group, c_ty, c_ng, c_hi, c_song}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : config_error;
  }

  try {
    if (*en) return cmd_enumerate(cfg, ea);
    if (*an) return cmd_analyze(cfg, input);
    if (*mo) return cmd_modular(cfg, input);
    if (*cr) return cmd_criteria(cfg, input);
    if (*nm) return cmd_name(cfg, input, check_up_to);
    if (*va) return cmd_validate(cfg, input);
    if (*co) {
      for (auto* sub : co->get_subcommands()) ca.kind = sub->get_name();
      return cmd_construct(cfg, ca);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return config_error;
  } catch (const io_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return io_failure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return io_failure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return config_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return failed;
  }
  return ok;
}
