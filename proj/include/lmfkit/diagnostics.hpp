#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lmfkit {

enum class Severity { error, warning, info };

std::string_view to_string(Severity s);

struct SourceLocation {
  std::string file;
  std::size_t line = 0;
  std::size_t column = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

struct Diagnostic {
  std::string code;
  Severity severity = Severity::error;
  std::optional<std::string> node;
  std::optional<SourceLocation> location;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct RegistryEntry {
  std::string_view code;
  Severity severity;
  std::string_view description;
};

// Every code the library can emit, sorted by code.
std::span<const RegistryEntry> registry();

// Looks up a code; throws std::out_of_range for unregistered codes.
const RegistryEntry& registry_entry(std::string_view code);

// Builds a diagnostic with the registered severity for `code`.
Diagnostic make_diagnostic(std::string_view code, std::string message,
                           std::optional<std::string> node = std::nullopt,
                           std::optional<SourceLocation> location = std::nullopt);

bool has_errors(std::span<const Diagnostic> diagnostics);

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;
  std::size_t errors = 0;
  std::size_t warnings = 0;
  std::size_t infos = 0;

  ValidationReport() = default;
  explicit ValidationReport(std::vector<Diagnostic> ds);

  bool ok() const { return errors == 0; }

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

// Sorts located diagnostics by (file rank, line, column, code). File rank is
// the order of first appearance in `file_order`, falling back to file name.
// Unlocated diagnostics keep their emission order and follow located ones.
void sort_diagnostics(std::vector<Diagnostic>& ds,
                      std::span<const std::string> file_order = {});

// `SEVERITY CODE file:line:col node message`
std::string render_text(const Diagnostic& d);
std::string render_text(const ValidationReport& r);
std::string render_json(const ValidationReport& r);

// Thrown by constructors that must fail atomically on the first violated
// model constraint.
class LmfError : public std::runtime_error {
 public:
  explicit LmfError(Diagnostic d);

  const Diagnostic& diagnostic() const noexcept { return diagnostic_; }
  const std::string& code() const noexcept { return diagnostic_.code; }

 private:
  Diagnostic diagnostic_;
};

}  // namespace lmfkit
