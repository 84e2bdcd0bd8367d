#include "stlobs/traceio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "numbers.hpp"
#include "stlobs/parser.hpp"

namespace stlobs::io {

namespace {

using detail::format_double;
using detail::trim;

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> cells;
  while (true) {
    const auto comma = s.find(',');
    cells.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return cells;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void check_signal_names(const std::vector<std::string>& names, std::size_t line) {
  if (names.empty()) throw FormatError("no signals declared", line);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& n = names[i];
    if (is_timestamp_name(n)) {
      throw FormatError(at_line(line) + "column '" + n +
                            "' looks like a timestamp; time is the row index, drop the column",
                        line);
    }
    if (!is_identifier(n) || is_reserved_word(n)) {
      throw FormatError(at_line(line) + "invalid signal name '" + n + "'", line);
    }
    if (std::find(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(i), n) !=
        names.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw FormatError(at_line(line) + "duplicate signal '" + n + "'", line);
    }
  }
}

double finite_value(double v, std::size_t line, const std::string& where) {
  if (!std::isfinite(v)) throw FormatError(at_line(line) + "non-finite value " + where, line);
  return v;
}

}  // namespace

FormatError::FormatError(const std::string& msg, std::size_t line)
    : std::runtime_error(msg), line_(line) {}

bool is_timestamp_name(std::string_view name) {
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower == "time" || lower == "timestamp" || lower == "tick";
}

CsvSampleReader::CsvSampleReader(std::istream& in) : in_(in) {
  std::string header;
  if (!std::getline(in_, header) || trim(header).empty()) {
    throw FormatError("empty trace: no header row", 1);
  }
  if (header.size() >= 3 && header.compare(0, 3, "\xEF\xBB\xBF") == 0) header.erase(0, 3);
  for (auto cell : split_commas(header)) signals_.emplace_back(cell);
  check_signal_names(signals_, 1);
}

std::optional<std::vector<double>> CsvSampleReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (trim(line).empty()) {
      // a trailing blank line is tolerated, a blank line between rows is not
      if (in_.peek() == std::char_traits<char>::eof()) return std::nullopt;
      throw FormatError(at_line(line_) + "blank row", line_);
    }
    const auto cells = split_commas(line);
    if (cells.size() != signals_.size()) {
      throw FormatError(at_line(line_) + "expected " + std::to_string(signals_.size()) +
                            " cells, found " + std::to_string(cells.size()),
                        line_);
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto v = detail::parse_double(cells[c]);
      const std::string where = "in column " + std::to_string(c + 1) + " (" + signals_[c] + ")";
      if (!v) {
        throw FormatError(at_line(line_) + "non-numeric cell '" + std::string(cells[c]) + "' " + where,
                          line_);
      }
      row.push_back(finite_value(*v, line_, where));
    }
    ++cursor_;
    return row;
  }
  return std::nullopt;
}

JsonlSampleReader::JsonlSampleReader(std::istream& in, std::vector<std::string> signals)
    : in_(in), signals_(std::move(signals)) {
  if (!signals_.empty()) check_signal_names(signals_, 0);
}

std::optional<std::vector<double>> JsonlSampleReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (trim(line).empty()) {
      warnings_.push_back(at_line(line_) + "blank line skipped");
      continue;
    }
    nlohmann::ordered_json obj;
    try {
      obj = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(at_line(line_) + "malformed JSON: " + e.what(), line_);
    }
    if (!obj.is_object()) throw FormatError(at_line(line_) + "expected a JSON object", line_);
    if (signals_.empty()) {
      for (const auto& [key, value] : obj.items()) signals_.push_back(key);
      check_signal_names(signals_, line_);
    }
    std::vector<double> row;
    row.reserve(signals_.size());
    for (const auto& name : signals_) {
      const auto it = obj.find(name);
      if (it == obj.end()) {
        throw FormatError(at_line(line_) + "missing signal '" + name + "'", line_);
      }
      if (!it->is_number()) {
        throw FormatError(at_line(line_) + "signal '" + name + "' is not a number", line_);
      }
      row.push_back(finite_value(it->get<double>(), line_, "for '" + name + "'"));
    }
    if (obj.size() != signals_.size()) {
      for (const auto& [key, value] : obj.items()) {
        if (std::find(signals_.begin(), signals_.end(), key) == signals_.end()) {
          throw FormatError(at_line(line_) + "undeclared signal '" + key + "'", line_);
        }
      }
    }
    ++cursor_;
    return row;
  }
  return std::nullopt;
}

Trace read_csv(std::istream& in) {
  CsvSampleReader reader(in);
  Trace trace(reader.signals());
  while (auto row = reader.next()) trace.push_back(*row);
  return trace;
}

Trace read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

void write_csv(std::ostream& out, const Trace& trace) {
  for (std::size_t i = 0; i < trace.arity(); ++i) out << (i ? "," : "") << trace.signals()[i];
  out << "\n";
  for (Tick t = 0; t < trace.length(); ++t) {
    for (std::size_t i = 0; i < trace.arity(); ++i) {
      out << (i ? "," : "") << format_double(trace.at(t, i));
    }
    out << "\n";
  }
}

Trace read_jsonl(std::istream& in, std::vector<std::string> signals) {
  JsonlSampleReader reader(in, std::move(signals));
  std::vector<std::vector<double>> rows;
  while (auto row = reader.next()) rows.push_back(std::move(*row));
  if (reader.signals().empty()) throw FormatError("empty trace: no samples and no signals");
  Trace trace(reader.signals());
  for (const auto& r : rows) trace.push_back(r);
  return trace;
}

void write_jsonl(std::ostream& out, const Trace& trace) {
  for (Tick t = 0; t < trace.length(); ++t) {
    out << "{";
    for (std::size_t i = 0; i < trace.arity(); ++i) {
      out << (i ? "," : "") << nlohmann::json(trace.signals()[i]).dump() << ":"
          << format_double(trace.at(t, i));
    }
    out << "}\n";
  }
}

std::string_view to_string(VerdictFormat f) {
  switch (f) {
    case VerdictFormat::text: return "text";
    case VerdictFormat::csv: return "csv";
    case VerdictFormat::jsonl: return "jsonl";
  }
  return "?";
}

std::optional<VerdictFormat> parse_verdict_format(std::string_view name) {
  if (name == "text") return VerdictFormat::text;
  if (name == "csv") return VerdictFormat::csv;
  if (name == "jsonl") return VerdictFormat::jsonl;
  return std::nullopt;
}

VerdictWriter::VerdictWriter(std::ostream& out, VerdictFormat format, bool flush_each)
    : out_(out), format_(format), flush_each_(flush_each) {}

void VerdictWriter::header() {
  if (!header_done_ && format_ == VerdictFormat::csv) out_ << "tick,verdict,pos,neg\n";
  header_done_ = true;
}

void VerdictWriter::write(const VerdictRecord& r) {
  header();
  const int pos = r.flags.positive();
  const int neg = r.flags.negative();
  const char v = to_char(r.verdict);
  switch (format_) {
    case VerdictFormat::text:
      out_ << "tick=" << r.tick << " verdict=" << v << " pos=" << pos << " neg=" << neg << "\n";
      break;
    case VerdictFormat::csv: out_ << r.tick << "," << v << "," << pos << "," << neg << "\n"; break;
    case VerdictFormat::jsonl:
      out_ << "{\"tick\":" << r.tick << ",\"verdict\":\"" << v << "\",\"pos\":" << pos
           << ",\"neg\":" << neg << "}\n";
      break;
  }
  if (flush_each_) out_.flush();
  if (!out_) throw std::runtime_error("cannot write verdict stream");
}

void VerdictWriter::finish() {
  header();
  out_.flush();
  if (!out_) throw std::runtime_error("cannot write verdict stream");
}

void write_verdicts(std::ostream& out, const std::vector<VerdictRecord>& records,
                    VerdictFormat format) {
  VerdictWriter w(out, format);
  for (const auto& r : records) w.write(r);
  w.finish();
}

namespace {

VerdictRecord make_record(std::uint64_t tick, char verdict, int pos, int neg, std::size_t line) {
  if ((pos != 0 && pos != 1) || (neg != 0 && neg != 1)) {
    throw FormatError(at_line(line) + "flags must be 0 or 1", line);
  }
  try {
    const Trilean v = parse_trilean(std::string_view(&verdict, 1));
    const FlagPair flags(pos != 0, neg != 0);
    if (from_flags(flags) != v) throw FormatError(at_line(line) + "verdict disagrees with flags", line);
    return VerdictRecord{tick, flags, v};
  } catch (const std::invalid_argument&) {
    throw FormatError(at_line(line) + "bad verdict", line);
  } catch (const ConsistencyError& e) {
    throw FormatError(at_line(line) + e.what(), line);
  }
}

std::uint64_t parse_tick(std::string_view s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw FormatError(at_line(line) + "bad tick '" + std::string(s) + "'", line);
  }
  return v;
}

int parse_flag(std::string_view s, std::size_t line) {
  if (s == "0") return 0;
  if (s == "1") return 1;
  throw FormatError(at_line(line) + "bad flag '" + std::string(s) + "'", line);
}

}  // namespace

std::vector<VerdictRecord> read_verdicts(std::istream& in, VerdictFormat format) {
  std::vector<VerdictRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto text = trim(line);
    if (text.empty()) continue;
    switch (format) {
      case VerdictFormat::text: {
        std::string_view rest = text;
        std::vector<std::string_view> values;
        for (std::string_view key : {"tick=", "verdict=", "pos=", "neg="}) {
          if (rest.substr(0, key.size()) != key) {
            throw FormatError(at_line(n) + "expected '" + std::string(key) + "'", n);
          }
          rest.remove_prefix(key.size());
          const auto space = rest.find(' ');
          values.push_back(rest.substr(0, space));
          rest = space == std::string_view::npos ? std::string_view{} : rest.substr(space + 1);
        }
        if (values[1].size() != 1) throw FormatError(at_line(n) + "bad verdict", n);
        out.push_back(make_record(parse_tick(values[0], n), values[1][0], parse_flag(values[2], n),
                                  parse_flag(values[3], n), n));
        break;
      }
      case VerdictFormat::csv: {
        if (n == 1) {
          if (text != "tick,verdict,pos,neg") throw FormatError("bad verdict CSV header", 1);
          continue;
        }
        const auto cells = split_commas(text);
        if (cells.size() != 4 || cells[1].size() != 1) {
          throw FormatError(at_line(n) + "expected tick,verdict,pos,neg", n);
        }
        out.push_back(make_record(parse_tick(cells[0], n), cells[1][0], parse_flag(cells[2], n),
                                  parse_flag(cells[3], n), n));
        break;
      }
      case VerdictFormat::jsonl: {
        try {
          const auto j = nlohmann::json::parse(text);
          const auto v = j.at("verdict").get<std::string>();
          if (v.size() != 1) throw FormatError(at_line(n) + "bad verdict", n);
          out.push_back(make_record(j.at("tick").get<std::uint64_t>(), v[0], j.at("pos").get<int>(),
                                    j.at("neg").get<int>(), n));
        } catch (const nlohmann::json::exception& e) {
          throw FormatError(at_line(n) + e.what(), n);
        }
        break;
      }
    }
  }
  if (format == VerdictFormat::csv && n == 0) throw FormatError("empty verdict CSV");
  return out;
}

}  // namespace stlobs::io
