#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stlobs/monitor.hpp"
#include "stlobs/trace.hpp"

// Trace ingestion (CSV, JSON lines) and verdict emission. Time is the row or
// line index; there is no timestamp column.

namespace stlobs::io {

/// Malformed input. line() is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& msg, std::size_t line = 0);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Header names that would be read as time rather than as a signal.
bool is_timestamp_name(std::string_view name);

/// Streaming CSV reader: header of signal names, then one row per tick.
/// Commas only, '.' decimal point, LF or CRLF.
class CsvSampleReader {
 public:
  /// Reads the header. Throws FormatError on an empty stream or a bad header.
  explicit CsvSampleReader(std::istream& in);

  const std::vector<std::string>& signals() const { return signals_; }
  /// Next row, or nullopt at end of input.
  std::optional<std::vector<double>> next();
  /// Ticks delivered so far.
  Tick cursor() const { return cursor_; }

 private:
  std::istream& in_;
  std::vector<std::string> signals_;
  std::size_t line_ = 1;
  Tick cursor_ = 0;
};

/// Streaming JSON-lines reader: one object per line mapping signal name to
/// number. Without declared signals, the first object's keys (in order)
/// declare them. Blank lines are skipped and noted in warnings().
class JsonlSampleReader {
 public:
  explicit JsonlSampleReader(std::istream& in, std::vector<std::string> signals = {});

  /// Signals; empty until the first object when not declared.
  const std::vector<std::string>& signals() const { return signals_; }
  std::optional<std::vector<double>> next();
  Tick cursor() const { return cursor_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::istream& in_;
  std::vector<std::string> signals_;
  std::vector<std::string> warnings_;
  std::size_t line_ = 0;
  Tick cursor_ = 0;
};

Trace read_csv(std::istream& in);
Trace read_csv(const std::filesystem::path& path);
void write_csv(std::ostream& out, const Trace& trace);

Trace read_jsonl(std::istream& in, std::vector<std::string> signals = {});
void write_jsonl(std::ostream& out, const Trace& trace);

enum class VerdictFormat { text, csv, jsonl };

std::string_view to_string(VerdictFormat f);
std::optional<VerdictFormat> parse_verdict_format(std::string_view name);

/// Writes one record per call; flushes after each record when asked to.
class VerdictWriter {
 public:
  VerdictWriter(std::ostream& out, VerdictFormat format, bool flush_each = false);

  void write(const VerdictRecord& record);
  /// Emits the CSV header if nothing was written. Throws std::runtime_error
  /// if the sink failed.
  void finish();

 private:
  void header();

  std::ostream& out_;
  VerdictFormat format_;
  bool flush_each_;
  bool header_done_ = false;
};

void write_verdicts(std::ostream& out, const std::vector<VerdictRecord>& records,
                    VerdictFormat format);
std::vector<VerdictRecord> read_verdicts(std::istream& in, VerdictFormat format);

}  // namespace stlobs::io
