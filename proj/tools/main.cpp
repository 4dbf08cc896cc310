#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "branchdec/dec_io.hpp"
#include "branchdec/errors.hpp"
#include "branchdec/instances.hpp"
#include "branchdec/matroid.hpp"
#include "branchdec/solver.hpp"

namespace {

using namespace branchdec;

// Exit codes: 0 success, 2 width refusal, 3 input or validation error,
// 4 internal invariant failure.
constexpr int kExitRefused = 2;
constexpr int kExitBadInput = 3;
constexpr int kExitInternal = 4;

struct Instance {
  // Set for matroid kinds; `oracle` is then a LambdaOracle over it.
  std::unique_ptr<MatroidRankOracle> rank;
  std::unique_ptr<ConnectivityOracle> oracle;
};

Instance loadInstance(const std::string& kind, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  Instance inst;
  if (kind == "matroid-gf2") {
    inst.rank = std::make_unique<Gf2Matroid>(parseMatrix(in));
    inst.oracle = std::make_unique<LambdaOracle>(*inst.rank);
  } else if (kind == "matroid-graphic") {
    inst.rank = std::make_unique<GraphicMatroid>(parseGraph(in));
    inst.oracle = std::make_unique<LambdaOracle>(*inst.rank);
  } else if (kind == "table") {
    int universe = 0;
    std::vector<std::int64_t> values = parseTable(in, &universe);
    inst.oracle = std::make_unique<TableOracle>(universe, std::move(values));
  } else {
    const Graph graph = parseGraph(in);
    if (kind == "carving") {
      inst.oracle = std::make_unique<CarvingOracle>(graph);
    } else if (kind == "branchwidth") {
      inst.oracle = std::make_unique<GraphBranchwidthOracle>(graph);
    } else {
      inst.oracle = std::make_unique<CutRankOracle>(graph);
    }
  }
  if (inst.oracle->universeSize() < 2) {
    throw ValidationError("ground set must have at least two elements");
  }
  return inst;
}

sfm::Strategy parseStrategy(const std::string& name) {
  if (name == "enumerate") return sfm::Strategy::Enumerate;
  if (name == "mnp") return sfm::Strategy::MinNormPoint;
  return sfm::Strategy::Auto;
}

void printStats(const Instance& inst) {
  std::cout << "oracle_calls=" << inst.oracle->underlyingCalls() << '\n';
  std::cout << "cache_size=" << inst.oracle->cacheSize() << '\n';
  if (inst.rank) std::cout << "rank_calls=" << inst.rank->underlyingCalls() << '\n';
}

struct DecomposeArgs {
  std::string kind;
  std::string input;
  std::string output;
  std::int64_t k = 0;
  bool hasK = false;
  bool search = false;
  int baseThreshold = 8;
  std::string sfmName = "auto";
  std::optional<std::uint64_t> seed;
  bool stats = false;
};

int runDecompose(const DecomposeArgs& args) {
  Instance inst = loadInstance(args.kind, args.input);
  SolverConfig config;
  config.baseThreshold = args.baseThreshold;
  config.sfm.strategy = parseStrategy(args.sfmName);
  config.shuffleSeed = args.seed;

  std::int64_t width = 0;
  std::optional<BranchDecomposition> dec;
  if (args.search) {
    SearchResult result = searchMinWidth(*inst.oracle, config);
    width = result.width;
    dec = std::move(result.decomposition);
  } else {
    SolveOutcome outcome = iterativeCompression(*inst.oracle, args.k, config);
    if (outcome.exceeded()) {
      std::cout << "branch-width > " << args.k << '\n';
      if (args.stats) printStats(inst);
      return kExitRefused;
    }
    dec = std::move(outcome.decomposition);
    width = decompositionWidth(*inst.oracle, *dec).width;
  }

  const std::string outPath =
      args.output.empty() ? args.input + ".dec" : args.output;
  std::ofstream out(outPath, std::ios::binary);
  if (!out) throw ValidationError("cannot write output file: " + outPath);
  writeDecomposition(out, *dec, width);
  out.flush();
  if (!out) throw ValidationError("failed writing output file: " + outPath);

  std::cout << "width=" << width << '\n';
  if (args.stats) printStats(inst);
  return 0;
}

struct VerifyArgs {
  std::string kind;
  std::string input;
  std::string decomposition;
  std::int64_t k = 0;
  bool hasK = false;
};

int runVerify(const VerifyArgs& args) {
  Instance inst = loadInstance(args.kind, args.input);
  std::ifstream decIn(args.decomposition);
  if (!decIn) {
    throw ValidationError("cannot open decomposition file: " +
                          args.decomposition);
  }
  DecompositionFile file = readDecomposition(decIn);
  const WidthReport report = decompositionWidth(*inst.oracle, file.dec);
  if (file.width && *file.width != report.width) {
    throw ValidationError("stored width " + std::to_string(*file.width) +
                          " disagrees with recomputed width " +
                          std::to_string(report.width));
  }
  std::cout << "width=" << report.width << '\n';
  if (args.hasK && report.width > args.k) return kExitRefused;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"branch-decomposition solver for connectivity functions"};
  app.require_subcommand(1);
  const std::vector<std::string> kinds = {
      "carving",     "branchwidth",     "rankwidth",
      "matroid-gf2", "matroid-graphic", "table"};

  DecomposeArgs dArgs;
  CLI::App* dec = app.add_subcommand(
      "decompose", "compute a branch-decomposition of bounded or minimum width");
  dec->add_option("--kind", dArgs.kind, "instance kind")
      ->required()
      ->check(CLI::IsMember(kinds));
  dec->add_option("--input", dArgs.input, "instance file")->required();
  CLI::Option* kOpt =
      dec->add_option("--k", dArgs.k, "width bound to decide");
  CLI::Option* searchOpt =
      dec->add_flag("--search", dArgs.search, "find the minimum width");
  kOpt->excludes(searchOpt);
  searchOpt->excludes(kOpt);
  dec->add_option("--output", dArgs.output,
                  "decomposition file (default: <input>.dec)");
  dec->add_option("--base-threshold", dArgs.baseThreshold,
                  "ground size solved by exact enumeration");
  dec->add_option("--sfm", dArgs.sfmName, "minimization strategy")
      ->check(CLI::IsMember({"enumerate", "mnp", "auto"}));
  std::uint64_t seedValue = 0;
  CLI::Option* seedOpt =
      dec->add_option("--seed", seedValue, "insertion-order shuffle seed");
  dec->add_flag("--stats", dArgs.stats,
                "print oracle call counts as key=value lines");

  VerifyArgs vArgs;
  CLI::App* ver = app.add_subcommand(
      "verify", "recompute and check the width of a decomposition file");
  ver->add_option("--kind", vArgs.kind, "instance kind")
      ->required()
      ->check(CLI::IsMember(kinds));
  ver->add_option("--input", vArgs.input, "instance file")->required();
  ver->add_option("--decomposition", vArgs.decomposition,
                  "decomposition file")
      ->required();
  CLI::Option* vkOpt =
      ver->add_option("--k", vArgs.k, "width bound to check against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (dec->parsed()) {
      dArgs.hasK = kOpt->count() > 0;
      if (dArgs.hasK == dArgs.search) {
        std::cerr << "error: exactly one of --k and --search is required\n";
        return kExitBadInput;
      }
      if (seedOpt->count() > 0) dArgs.seed = seedValue;
      return runDecompose(dArgs);
    }
    vArgs.hasK = vkOpt->count() > 0;
    return runVerify(vArgs);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
