#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace stochord::cli {

namespace {

using nlohmann::json;

// Forward iterator over the raw text that counts the newlines it steps over,
// so SAX callbacks know which line the parser is on.
struct LineCountingIterator {
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p = nullptr;
  std::size_t* line = nullptr;

  reference operator*() const { return *p; }
  LineCountingIterator& operator++() {
    if (*p == '\n') ++*line;
    ++p;
    return *this;
  }
  LineCountingIterator operator++(int) {
    auto old = *this;
    ++*this;
    return old;
  }
  bool operator==(const LineCountingIterator& o) const { return p == o.p; }
};

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Builds the DOM through nlohmann's own SAX builder and records the line of
// every object member and array element, keyed by JSON pointer.
class LocatingSax {
 public:
  LocatingSax(json& root, std::size_t* line) : dom_(root, true), line_(line) {}

  bool null() { return scalar([&] { return dom_.null(); }); }
  bool boolean(bool v) { return scalar([&] { return dom_.boolean(v); }); }
  bool number_integer(json::number_integer_t v) { return scalar([&] { return dom_.number_integer(v); }); }
  bool number_unsigned(json::number_unsigned_t v) { return scalar([&] { return dom_.number_unsigned(v); }); }
  bool number_float(json::number_float_t v, const json::string_t& s) {
    return scalar([&] { return dom_.number_float(v, s); });
  }
  bool string(json::string_t& v) { return scalar([&] { return dom_.string(v); }); }
  bool binary(json::binary_t& v) { return scalar([&] { return dom_.binary(v); }); }

  bool start_object(std::size_t n) {
    begin_value();
    frames_.push_back({false, 0, {}});
    return dom_.start_object(n);
  }
  bool key(json::string_t& k) {
    frames_.back().key = k;
    lines_[pointer()] = *line_;
    return dom_.key(k);
  }
  bool end_object() {
    frames_.pop_back();
    const bool ok = dom_.end_object();
    end_value();
    return ok;
  }
  bool start_array(std::size_t n) {
    begin_value();
    frames_.push_back({true, 0, {}});
    return dom_.start_array(n);
  }
  bool end_array() {
    frames_.pop_back();
    const bool ok = dom_.end_array();
    end_value();
    return ok;
  }
  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& e) {
    error_byte_ = pos;
    error_ = e.what();
    return false;
  }

  const std::optional<std::string>& error() const { return error_; }
  std::size_t error_byte() const { return error_byte_; }

  std::map<std::string, std::size_t> take_lines() { return std::move(lines_); }

 private:
  struct Frame {
    bool array;
    std::size_t index;
    std::string key;
  };

  template <class F>
  bool scalar(F&& f) {
    begin_value();
    const bool ok = f();
    end_value();
    return ok;
  }
  void begin_value() {
    if (!frames_.empty() && frames_.back().array) lines_[pointer()] = *line_;
  }
  void end_value() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }
  std::string pointer() const {
    std::string out;
    for (const auto& f : frames_) out += "/" + (f.array ? std::to_string(f.index) : escape_token(f.key));
    return out;
  }

  nlohmann::detail::json_sax_dom_parser<json> dom_;
  std::size_t* line_;
  std::vector<Frame> frames_;
  std::map<std::string, std::size_t> lines_;
  std::optional<std::string> error_;
  std::size_t error_byte_ = 0;
};

class Document {
 public:
  explicit Document(const std::filesystem::path& path) : path_(path.string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path_ + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::size_t line = 1;
    LocatingSax sax(root_, &line);
    LineCountingIterator first{text.data(), &line};
    LineCountingIterator last{text.data() + text.size(), &line};
    if (!json::sax_parse(first, last, &sax) || sax.error()) {
      const std::size_t at = std::min(sax.error_byte() == 0 ? 0 : sax.error_byte() - 1, text.size());
      const auto err_line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(at), '\n');
      throw ConfigError(path_ + ":" + std::to_string(err_line) + ": invalid JSON: " + sax.error().value_or("parse error"));
    }
    lines_ = sax.take_lines();
  }

  const json& root() const { return root_; }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    std::string p = pointer;
    for (;;) {
      if (auto it = lines_.find(p); it != lines_.end()) {
        throw ConfigError(path_ + ":" + std::to_string(it->second) + ": " + message);
      }
      if (p.empty()) break;
      p.erase(p.rfind('/'));
    }
    throw ConfigError(path_ + ":1: " + message);
  }

  const json& object(const std::string& ptr, std::initializer_list<const char*> required,
                     std::initializer_list<const char*> optional = {}) const {
    const json& v = at(ptr);
    if (!v.is_object()) fail(ptr, where(ptr) + "expected an object");
    std::set<std::string> known;
    for (const char* k : required) {
      known.insert(k);
      if (!v.contains(k)) fail(ptr, where(ptr) + "missing key '" + k + "'");
    }
    for (const char* k : optional) known.insert(k);
    for (const auto& [k, unused] : v.items()) {
      if (!known.count(k)) fail(ptr + "/" + escape_token(k), "unknown key '" + k + "'");
    }
    return v;
  }

  double number(const std::string& ptr) const {
    const json& v = at(ptr);
    if (!v.is_number()) fail(ptr, where(ptr) + "expected a number");
    return v.get<double>();
  }

  std::string text(const std::string& ptr) const {
    const json& v = at(ptr);
    if (!v.is_string()) fail(ptr, where(ptr) + "expected a string");
    return v.get<std::string>();
  }

  bool has(const std::string& ptr) const { return root_.contains(json::json_pointer(ptr)); }

  const json& at(const std::string& ptr) const { return root_.at(json::json_pointer(ptr)); }

  static std::string where(const std::string& ptr) { return ptr.empty() ? "" : ptr + ": "; }

 private:
  std::string path_;
  json root_;
  std::map<std::string, std::size_t> lines_;
};

SystemSpec read_system(const Document& doc, const std::string& ptr) {
  doc.object(ptr, {"family", "structure", "components"}, {"baseline"});
  SystemSpec spec;

  const std::string structure = doc.text(ptr + "/structure");
  if (structure == "series") spec.structure = Structure::series;
  else if (structure == "parallel") spec.structure = Structure::parallel;
  else doc.fail(ptr + "/structure", "structure must be \"series\" or \"parallel\"");

  const std::string family = doc.text(ptr + "/family");
  const bool wg = family == "weibull-g";
  if (!wg && family != "gompertz-makeham") {
    doc.fail(ptr + "/family", "family must be \"weibull-g\" or \"gompertz-makeham\"");
  }
  if (doc.has(ptr + "/baseline")) {
    if (!wg) doc.fail(ptr + "/baseline", "baseline applies to weibull-g only");
    if (doc.text(ptr + "/baseline") != "exponential") {
      doc.fail(ptr + "/baseline", "only the \"exponential\" baseline can be configured");
    }
  }

  const json& list = doc.at(ptr + "/components");
  if (!list.is_array() || list.empty()) {
    doc.fail(ptr + "/components", "components must be a non-empty array");
  }
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string c = ptr + "/components/" + std::to_string(k);
    try {
      if (wg) {
        doc.object(c, {"alpha", "beta", "gamma"});
        spec.components.emplace_back(WeibullGParams{doc.number(c + "/alpha"), doc.number(c + "/beta"),
                                                    doc.number(c + "/gamma"), Baseline::exponential()});
      } else {
        doc.object(c, {"alpha", "beta", "lambda"});
        spec.components.emplace_back(
            GompertzMakehamParams{doc.number(c + "/alpha"), doc.number(c + "/beta"), doc.number(c + "/lambda")});
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      doc.fail(c, c + ": " + e.what());
    }
  }
  return spec;
}

std::optional<Order> read_order(const Document& doc, const std::string& ptr) {
  if (!doc.has(ptr)) return std::nullopt;
  auto o = parse_order(doc.text(ptr));
  if (!o) doc.fail(ptr, "order must be one of st, hr, rh, lr");
  return o;
}

}  // namespace

SystemSpec load_system(const std::filesystem::path& path) {
  Document doc(path);
  return read_system(doc, "");
}

CompareConfig load_compare(const std::filesystem::path& path) {
  Document doc(path);
  doc.object("", {"lhs", "rhs"}, {"order", "grid"});
  CompareConfig c{read_system(doc, "/lhs"), read_system(doc, "/rhs"), read_order(doc, "/order"), {}};
  if (doc.has("/grid")) {
    doc.object("/grid", {}, {"count", "x_max", "policy"});
    if (doc.has("/grid/count")) {
      const json& v = doc.at("/grid/count");
      if (!v.is_number_unsigned() || v.get<std::size_t>() < 16) {
        doc.fail("/grid/count", "grid count must be an integer >= 16");
      }
      c.grid.count = v.get<std::size_t>();
    }
    if (doc.has("/grid/x_max")) {
      const double x = doc.number("/grid/x_max");
      if (!(x > 0.0)) doc.fail("/grid/x_max", "x_max must be positive");
      c.grid.x_max = x;
    }
    if (doc.has("/grid/policy")) {
      const std::string p = doc.text("/grid/policy");
      if (p == "linear") c.grid.policy = GridPolicy::linear;
      else if (p == "log") c.grid.policy = GridPolicy::log_spaced;
      else doc.fail("/grid/policy", "policy must be \"linear\" or \"log\"");
    }
  }
  return c;
}

ParamMatrix load_matrix(const std::filesystem::path& path) {
  Document doc(path);
  doc.object("", {"matrix"});
  const json& m = doc.at("/matrix");
  if (!m.is_array() || m.size() != 2) doc.fail("/matrix", "matrix must have exactly two rows");
  std::vector<double> rows[2];
  for (std::size_t r = 0; r < 2; ++r) {
    const std::string rp = "/matrix/" + std::to_string(r);
    if (!doc.at(rp).is_array()) doc.fail(rp, "matrix rows must be arrays");
    for (std::size_t k = 0; k < doc.at(rp).size(); ++k) rows[r].push_back(doc.number(rp + "/" + std::to_string(k)));
  }
  if (rows[0].size() != rows[1].size()) doc.fail("/matrix/1", "matrix rows differ in length");
  try {
    return ParamMatrix(rows[0], rows[1]);
  } catch (const std::exception& e) {
    doc.fail("/matrix", e.what());
  }
}

}  // namespace stochord::cli
