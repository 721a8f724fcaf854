// lmfkit: validate, convert and query TEI-encoded lexical resources.
//
// Exit codes: 0 no errors, 1 validation errors, 2 usage or I/O failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lmfkit/store.hpp"
#include "lmfkit/tei.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kFailure = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lmfkit::IoError(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  return static_cast<bool>(out);
}

void print_diagnostics(const std::vector<lmfkit::Diagnostic>& ds) {
  for (const auto& d : ds) std::cerr << lmfkit::render_text(d) << '\n';
}

// Ingests a corpus; prints the diagnostics and returns nullopt when the
// corpus does not validate.
std::optional<lmfkit::Store> load_corpus(const std::vector<std::string>& files, const lmfkit::SerializationProfile& p) {
  auto result = lmfkit::ingest(files, p);
  if (!result.store) {
    print_diagnostics(result.report.diagnostics);
    return std::nullopt;
  }
  return std::move(result.store);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Validate, convert and query TEI-encoded lexical resources"};
  app.require_subcommand(1);

  std::string profile_path;
  if (const char* env = std::getenv("LMFKIT_PROFILE")) profile_path = env;
  app.add_option("--profile", profile_path, "Constraint profile file (default: $LMFKIT_PROFILE, else built in)");

  std::vector<std::string> files;
  std::string format = "text";

  auto* validate = app.add_subcommand("validate", "Validate files as one corpus");
  validate->add_option("files", files, "TEI files")->required();
  validate->add_option("--profile", profile_path, "Constraint profile file");
  validate->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));

  std::string input, output, target = "tei";
  bool canonical = false;
  auto* convert = app.add_subcommand("convert", "Re-serialize one file");
  convert->add_option("file", input, "TEI file")->required();
  convert->add_flag("--canonical", canonical, "Canonicalize the XML without building a model");
  convert->add_option("--to", target, "Output format")->check(CLI::IsMember({"tei", "json"}));
  convert->add_option("-o,--output", output, "Output file (default stdout)");
  convert->add_option("--profile", profile_path, "Constraint profile file");

  std::string headword;
  auto* lookup = app.add_subcommand("lookup", "Find entries by headword");
  lookup->add_option("headword", headword)->required();
  lookup->add_option("--corpus", files, "TEI files")->required();
  lookup->add_option("--profile", profile_path, "Constraint profile file");

  auto* etym = app.add_subcommand("etym", "Render the etymological chain of a headword");
  etym->add_option("headword", headword)->required();
  etym->add_option("--corpus", files, "TEI files")->required();
  etym->add_option("--profile", profile_path, "Constraint profile file");

  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("--corpus", files, "TEI files")->required();
  stats->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  stats->add_option("--profile", profile_path, "Constraint profile file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kFailure;
  }

  try {
    const lmfkit::SerializationProfile profile =
        profile_path.empty() ? lmfkit::default_profile() : lmfkit::load_profile(profile_path);

    if (*validate) {
      auto result = lmfkit::ingest(files, profile);
      std::cout << (format == "json" ? lmfkit::render_json(result.report) : lmfkit::render_text(result.report));
      return result.report.ok() ? kOk : kInvalid;
    }

    if (*convert) {
      const std::string bytes = read_file(input);
      lmfkit::ParseOptions options;
      options.file = input;
      if (canonical) {
        auto report = lmfkit::canonicalize(bytes, profile, options);
        print_diagnostics(report.diagnostics);
        if (!report.value) return kInvalid;
        return write_output(output, *report.value) ? kOk : kFailure;
      }
      if (target == "json") {
        auto store = load_corpus({input}, profile);
        if (!store) return kInvalid;
        return write_output(output, lmfkit::export_json(*store)) ? kOk : kFailure;
      }
      auto report = lmfkit::parse_document(bytes, profile, options);
      print_diagnostics(report.diagnostics);
      if (!report.value) return kInvalid;
      return write_output(output, lmfkit::serialize_document(*report.value, profile)) ? kOk : kFailure;
    }

    auto store = load_corpus(files, profile);
    if (!store) return kInvalid;

    if (*lookup) {
      auto hits = lmfkit::lookup(*store, headword);
      if (hits.empty()) std::cerr << "no entry for '" << headword << "'\n";
      for (const auto& h : hits) {
        std::cout << h.handle << '\t' << h.language << '\t' << h.lemma << "\tsenses=" << h.sense_count << '\n';
      }
      return kOk;
    }

    if (*etym) {
      std::cout << lmfkit::etym_trace(*store, headword) << '\n';
      return kOk;
    }

    if (*stats) {
      auto s = lmfkit::stats(*store);
      std::cout << (format == "json" ? lmfkit::render_json(s) : lmfkit::render_text(s));
      return kOk;
    }
  } catch (const lmfkit::QueryError& e) {
    std::cerr << e.what() << '\n';
    return kFailure;
  } catch (const lmfkit::LmfError& e) {
    std::cerr << lmfkit::render_text(e.diagnostic()) << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "lmfkit: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
