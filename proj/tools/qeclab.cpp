// Copyright 2026 The qeclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qeclab command-line front end.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qeclab/qeclab.hpp"

namespace {

using qeclab::ErrorModel;
using qeclab::ExperimentConfig;
using qeclab::StabilizerCode;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "a:b:n" (n points, inclusive endpoints) or a comma list.
std::vector<double> parse_range(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw UsageError("range '" + text + "' must look like a:b:n");
    double a = std::stod(parts[0]), b = std::stod(parts[1]);
    int n = std::stoi(parts[2]);
    if (n < 1) throw UsageError("range '" + text + "' needs at least one point");
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
  }
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      out.push_back(std::stod(part));
    } catch (const std::exception&) {
      throw UsageError("cannot read a number from '" + part + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_range(text)) out.push_back(static_cast<int>(std::lround(v)));
  return out;
}

bool family_has_size(const std::string& family) {
  for (const auto& f : qeclab::families::catalogue()) {
    if (f.name == family) return !f.param.empty();
  }
  throw UsageError("unknown family '" + family + "' (see 'codes list')");
}

StabilizerCode load_code(const std::string& family, int size, const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file);
    return qeclab::read_catalogue_entry(in);
  }
  if (family.empty()) throw UsageError("give --family or --file");
  if (family_has_size(family) && size <= 0) throw UsageError("family '" + family + "' needs --L");
  return qeclab::build_named_code(family, size);
}

std::string code_label(const StabilizerCode& code, const qeclab::DistanceResult& d) {
  std::ostringstream os;
  os << "[[" << code.n() << ',' << code.k() << ',';
  if (d.distance) os << *d.distance;
  else os << ">=" << d.lower_bound;
  os << "]]";
  return os.str();
}

std::ostream* open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return &file;
}

// ---------------------------------------------------------------------------

struct CodeArgs {
  std::string family;
  int size = 0;
  std::string file;
};

void add_code_args(CLI::App* app, CodeArgs& a, bool allow_file) {
  app->add_option("--family", a.family, "code family (see 'codes list')");
  app->add_option("--L", a.size, "size parameter (L, or n for repetition and Bacon-Shor)");
  if (allow_file) app->add_option("--file", a.file, "catalogue entry to read instead of a family");
}

int cmd_codes_list(const std::string& format) {
  const auto& fams = qeclab::families::catalogue();
  if (format == "json") {
    json j = json::array();
    for (const auto& f : fams) j.push_back({{"family", f.name}, {"param", f.param}, {"description", f.description}});
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  for (const auto& f : fams) {
    std::cout << std::left << std::setw(24) << f.name << std::setw(4) << (f.param.empty() ? "-" : f.param)
              << f.description << '\n';
  }
  return kExitOk;
}

int cmd_codes_show(const CodeArgs& a, std::size_t cap) {
  StabilizerCode code = load_code(a.family, a.size, a.file);
  auto d = qeclab::distance(code, cap);
  std::cout << "# " << code_label(code, d) << ' ' << code.family() << ' ' << code.param_string() << '\n';
  qeclab::write_catalogue_entry(std::cout, code);
  return kExitOk;
}

int cmd_codes_validate(const CodeArgs& a) {
  StabilizerCode code = load_code(a.family, a.size, a.file);
  auto rep = qeclab::validate_code(code);
  for (const auto& f : rep.failures) {
    std::cout << "FAIL " << f.what;
    for (const auto& w : f.witnesses) std::cout << " [" << qeclab::format_pauli(w) << ']';
    std::cout << '\n';
  }
  for (const auto& note : rep.notes) std::cout << "note " << note << '\n';
  if (rep.ok()) std::cout << "ok\n";
  return rep.ok() ? kExitOk : kExitRuntime;
}

int cmd_codes_distance(const CodeArgs& a, std::size_t cap, const std::string& format) {
  StabilizerCode code = load_code(a.family, a.size, a.file);
  auto d = qeclab::distance(code, cap);
  if (format == "json") {
    json j{{"family", code.family()}, {"params", code.param_string()}, {"n", code.n()}, {"k", code.k()},
           {"lower_bound", d.lower_bound}};
    j["distance"] = d.distance ? json(*d.distance) : json(nullptr);
    if (d.witness) j["witness"] = qeclab::format_pauli(*d.witness);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << code_label(code, d);
    if (d.witness) std::cout << " witness " << qeclab::format_sparse(*d.witness);
    std::cout << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct NoiseArgs {
  std::string kind = "depolarizing";
  std::string p = "0.01";
  std::string q = "0";
};

void add_noise_args(CLI::App* app, NoiseArgs& n, bool ranges) {
  app->add_option("--noise", n.kind, "depolarizing | independent_xz | bitflip")->capture_default_str();
  app->add_option("--p", n.p, ranges ? "physical error rates: a:b:n or a list" : "physical error rate")
      ->capture_default_str();
  app->add_option("--q", n.q, ranges ? "measurement error rates, or 'p' to follow --p" : "measurement error rate")
      ->capture_default_str();
}

struct DecodeArgs {
  CodeArgs code;
  NoiseArgs noise;
  std::string decoder = "mwpm";
  std::string record;
  std::string syndrome;
  std::string format = "human";
};

int cmd_decode(const DecodeArgs& a) {
  StabilizerCode code = load_code(a.code.family, a.code.size, a.code.file);
  ErrorModel model{qeclab::parse_noise_kind(a.noise.kind), std::stod(a.noise.p), std::stod(a.noise.q)};
  model.validate();
  qeclab::DefectRecord rec;
  if (!a.record.empty() == !a.syndrome.empty()) throw UsageError("give exactly one of --record or --syndrome");
  if (!a.record.empty()) {
    std::ifstream in(a.record);
    if (!in) throw std::runtime_error("cannot open " + a.record);
    rec = qeclab::read_record(in);
  } else {
    qeclab::BitVec syn = qeclab::BitVec::from_string(a.syndrome);
    rec = qeclab::record_from_syndrome(code, syn);
  }
  auto dec = qeclab::make_decoder(a.decoder, code, model);
  auto c = dec->decode(rec);
  if (a.format == "json") {
    json j{{"decoder", a.decoder}, {"correction", qeclab::format_pauli(c.pauli)}, {"class", c.cls.to_string()},
           {"gave_up", c.gave_up}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "correction " << qeclab::format_sparse(c.pauli) << '\n';
    std::cout << "class " << c.cls.to_string() << '\n';
    if (c.gave_up) std::cout << "decoder gave up\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string family;
  std::string sizes;
  NoiseArgs noise;
  std::string decoder = "mwpm";
  std::uint64_t trials = 1000;
  std::string rounds = "1";
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string format = "csv";
  std::string out;
  bool timing = false;
  bool transversal = false;
  double target_ci = 0.0;
};

int cmd_sweep(const SweepArgs& a) {
  if (a.family.empty()) throw UsageError("sweep needs --family");
  std::vector<int> sizes = family_has_size(a.family) ? parse_sizes(a.sizes.empty() ? "0" : a.sizes) : std::vector<int>{0};
  if (family_has_size(a.family) && a.sizes.empty()) throw UsageError("family '" + a.family + "' needs --L");
  std::vector<double> ps = parse_range(a.noise.p);
  bool q_follows_p = a.noise.q == "p";
  std::vector<double> qs = q_follows_p ? std::vector<double>{0.0} : parse_range(a.noise.q);
  auto kind = qeclab::parse_noise_kind(a.noise.kind);

  std::vector<qeclab::ResultRow> rows;
  std::vector<json> configs;
  for (int size : sizes) {
    StabilizerCode code = qeclab::build_named_code(a.family, size);
    std::size_t rounds = 0;
    if (a.rounds == "L") rounds = static_cast<std::size_t>(std::max(size, 1));
    else rounds = static_cast<std::size_t>(std::stoul(a.rounds));
    for (double q0 : qs) {
      for (double p : ps) {
        ExperimentConfig cfg;
        cfg.family = a.family;
        cfg.size = size;
        cfg.model = ErrorModel{kind, p, q_follows_p ? p : q0};
        cfg.decoder = a.decoder;
        cfg.trials = a.trials;
        cfg.rounds = rounds;
        cfg.jobs = a.jobs;
        cfg.target_ci_width = a.target_ci;
        if (a.transversal) cfg.history.final_readout = qeclab::FinalReadout::TransversalZ;
        std::string label = a.family + "|" + code.param_string() + "|" + a.decoder + "|" + a.noise.kind + "|" +
                            qeclab::format_number(p) + "|" + qeclab::format_number(cfg.model.q) + "|" +
                            std::to_string(rounds);
        cfg.seed = qeclab::splitmix64(a.seed ^ qeclab::fnv1a(label));
        auto st = qeclab::run_trials(code, cfg);
        rows.push_back(qeclab::make_row(code, cfg, st));
        configs.push_back({{"noise", a.noise.kind},
                           {"x_failures", st.x_failures},
                           {"z_failures", st.z_failures},
                           {"gave_up", st.gave_up},
                           {"final_readout", a.transversal ? "transversal_z" : "perfect_round"}});
      }
    }
  }

  std::ofstream file;
  std::ostream& os = *open_output(a.out, file);
  if (a.format == "csv") {
    qeclab::write_csv_header(os);
    for (const auto& r : rows) qeclab::write_csv_row(os, r, a.timing);
  } else if (a.format == "json") {
    json j;
    j["schema"] = 1;
    j["config"] = {{"family", a.family},   {"L", a.sizes},        {"decoder", a.decoder},
                   {"noise", a.noise.kind}, {"p", a.noise.p},       {"q", a.noise.q},
                   {"rounds", a.rounds},   {"trials", a.trials},  {"seed", a.seed},
                   {"target_ci_width", a.target_ci}};
    j["rows"] = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      json row{{"family", r.family},       {"params", r.params},   {"decoder", r.decoder},
               {"p", r.p},                 {"q", r.q},             {"R", r.rounds},
               {"trials", r.trials},       {"failures", r.failures}, {"p_logical", r.p_logical},
               {"ci_low", r.ci_low},       {"ci_high", r.ci_high}, {"seed", r.seed},
               {"wall_time_s", a.timing ? r.wall_time_s : 0.0}};
      row.update(configs[i]);
      j["rows"].push_back(row);
    }
    os << j.dump(2) << '\n';
  } else {
    os << std::left << std::setw(20) << "code" << std::setw(10) << "decoder" << std::setw(10) << "p" << std::setw(10)
       << "q" << std::setw(5) << "R" << std::setw(10) << "trials" << std::setw(10) << "failures" << std::setw(12)
       << "p_logical" << "95% CI\n";
    for (const auto& r : rows) {
      os << std::left << std::setw(20) << (r.family + " " + r.params) << std::setw(10) << r.decoder << std::setw(10)
         << qeclab::format_number(r.p) << std::setw(10) << qeclab::format_number(r.q) << std::setw(5) << r.rounds
         << std::setw(10) << r.trials << std::setw(10) << r.failures << std::setw(12)
         << qeclab::format_number(r.p_logical) << '[' << qeclab::format_number(r.ci_low) << ", "
         << qeclab::format_number(r.ci_high) << "]\n";
    }
  }
  return kExitOk;
}

int cmd_threshold(const std::string& in_path, const std::string& format) {
  std::vector<qeclab::ResultRow> rows;
  if (in_path.empty() || in_path == "-") {
    rows = qeclab::read_csv(std::cin);
  } else {
    std::ifstream in(in_path);
    if (!in) throw std::runtime_error("cannot open " + in_path);
    rows = qeclab::read_csv(in);
  }
  auto est = qeclab::estimate_threshold(qeclab::curves_from_rows(rows));
  if (format == "json") {
    json j{{"p_c", est.estimate}, {"low", est.low}, {"high", est.high}};
    j["pairs"] = json::array();
    for (const auto& pr : est.pairs) j["pairs"].push_back({{"small", pr.small}, {"large", pr.large}, {"crossing", pr.crossing}});
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "# schema=1\nsmall,large,crossing\n";
    for (const auto& pr : est.pairs) std::cout << pr.small << ',' << pr.large << ',' << qeclab::format_number(pr.crossing) << '\n';
  } else {
    std::cout << "p_c = " << qeclab::format_number(est.estimate) << " (pairwise crossings "
              << qeclab::format_number(est.low) << " .. " << qeclab::format_number(est.high) << ")\n";
    for (const auto& pr : est.pairs) {
      std::cout << "  sizes " << pr.small << " / " << pr.large << ": " << qeclab::format_number(pr.crossing) << '\n';
    }
  }
  return kExitOk;
}

int cmd_circuit_run(const std::string& path, std::uint64_t seed, std::size_t shots) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::size_t n = 0;
  auto circuit = qeclab::parse_circuit(in, &n);
  for (std::size_t s = 0; s < shots; ++s) {
    qeclab::Rng rng(qeclab::trial_seed(seed, s));
    qeclab::Tableau t(n);
    auto outcomes = qeclab::run_circuit(t, circuit, rng);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      std::cout << (i ? " " : "") << (outcomes[i].outcome ? "-1" : "+1") << (outcomes[i].deterministic ? "" : "*");
    }
    std::cout << '\n';
  }
  return kExitOk;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("QECLAB_JOBS")) {
    try {
      int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qeclab: quantum error correction codes, decoders and Monte Carlo experiments"};
  app.require_subcommand(1);

  std::string format = "human";
  std::size_t cap = 8;

  auto* codes = app.add_subcommand("codes", "inspect the code catalogue");
  codes->require_subcommand(1);
  auto* c_list = codes->add_subcommand("list", "list code families");
  c_list->add_option("--format", format, "human | json")->check(CLI::IsMember({"human", "json"}));
  CodeArgs show_args, val_args, dist_args;
  auto* c_show = codes->add_subcommand("show", "print a catalogue entry");
  add_code_args(c_show, show_args, true);
  c_show->add_option("--cap", cap, "largest weight tried when computing the distance")->capture_default_str();
  auto* c_validate = codes->add_subcommand("validate", "check the stabilizer formalism invariants");
  add_code_args(c_validate, val_args, true);
  auto* c_distance = codes->add_subcommand("distance", "compute the code distance");
  add_code_args(c_distance, dist_args, true);
  c_distance->add_option("--cap", cap, "largest weight tried")->capture_default_str();
  c_distance->add_option("--format", format, "human | json")->check(CLI::IsMember({"human", "json"}));

  DecodeArgs dec_args;
  auto* decode = app.add_subcommand("decode", "decode one syndrome or defect record");
  add_code_args(decode, dec_args.code, true);
  add_noise_args(decode, dec_args.noise, false);
  decode->add_option("--decoder", dec_args.decoder, "ml | minweight | mwpm | rg | bs1d")->capture_default_str();
  decode->add_option("--record", dec_args.record, "defect record file");
  decode->add_option("--syndrome", dec_args.syndrome, "generator syndrome as a 0/1 string");
  decode->add_option("--format", dec_args.format, "human | json")->check(CLI::IsMember({"human", "json"}));

  SweepArgs sw;
  sw.jobs = default_jobs();
  auto* sweep = app.add_subcommand("sweep", "logical error rates over a grid of sizes and error rates");
  sweep->add_option("--family", sw.family, "code family")->required();
  sweep->add_option("--L", sw.sizes, "sizes: list or a:b:n");
  add_noise_args(sweep, sw.noise, true);
  sweep->add_option("--decoder", sw.decoder, "ml | minweight | mwpm | rg | bs1d")->capture_default_str();
  sweep->add_option("--trials", sw.trials, "trials per point (maximum in adaptive mode)")->capture_default_str();
  sweep->add_option("--rounds", sw.rounds, "noisy measurement rounds, or 'L'")->capture_default_str();
  sweep->add_option("--seed", sw.seed, "base seed")->required();
  sweep->add_option("--jobs", sw.jobs, "worker threads (default $QECLAB_JOBS or 1)");
  sweep->add_option("--format", sw.format, "csv | json | human")->check(CLI::IsMember({"csv", "json", "human"}));
  sweep->add_option("--out", sw.out, "output file (default stdout)");
  sweep->add_flag("--timing", sw.timing, "record wall-clock time (output is then not reproducible)");
  sweep->add_flag("--transversal-readout", sw.transversal, "end with a transversal Z readout instead of a perfect round");
  sweep->add_option("--target-ci-width", sw.target_ci, "adaptive mode: stop once the 95% interval is this narrow");

  std::string thr_in;
  std::string thr_format = "human";
  auto* threshold = app.add_subcommand("threshold", "estimate the threshold from sweep CSV");
  threshold->add_option("--in", thr_in, "sweep CSV (default stdin)");
  threshold->add_option("--format", thr_format, "human | json | csv")->check(CLI::IsMember({"human", "json", "csv"}));

  std::string circ_file;
  std::uint64_t circ_seed = 0;
  std::size_t shots = 1;
  auto* circuit = app.add_subcommand("circuit", "Clifford circuit simulation");
  circuit->require_subcommand(1);
  auto* c_run = circuit->add_subcommand("run", "simulate a circuit file and print measurement outcomes");
  c_run->add_option("--file", circ_file, "circuit file")->required();
  c_run->add_option("--seed", circ_seed, "seed for random outcomes")->required();
  c_run->add_option("--shots", shots, "number of runs")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (c_list->parsed()) return cmd_codes_list(format);
    if (c_show->parsed()) return cmd_codes_show(show_args, cap);
    if (c_validate->parsed()) return cmd_codes_validate(val_args);
    if (c_distance->parsed()) return cmd_codes_distance(dist_args, cap, format);
    if (decode->parsed()) return cmd_decode(dec_args);
    if (sweep->parsed()) return cmd_sweep(sw);
    if (threshold->parsed()) return cmd_threshold(thr_in, thr_format);
    if (c_run->parsed()) return cmd_circuit_run(circ_file, circ_seed, shots);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
