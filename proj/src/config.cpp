#include "pencileig/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace pencileig {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_real(std::string text, const std::string& context) {
  if (!text.empty() && text[0] == '+') text.erase(0, 1);
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
    throw Error(ErrorCode::ParseError, "invalid number in '" + context + "'");
  return v;
}

Index parse_index(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  Index v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw Error(ErrorCode::ParseError, "invalid integer for '" + key + "': '" + text + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw Error(ErrorCode::ParseError, "empty item in list '" + text + "'");
    out.push_back(item);
  }
  return out;
}

EmbeddingKind parse_embedding(const std::string& name) {
  if (name == "identity") return EmbeddingKind::Identity;
  if (name == "gaussian" || name == "dense") return EmbeddingKind::DenseGaussian;
  if (name == "givens" || name == "sparse") return EmbeddingKind::GivensSparse;
  throw Error(ErrorCode::ParseError, "unknown embedding '" + name + "'");
}

}  // namespace

Complex parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty complex number");
  const char last = text.back();
  if (last != 'i' && last != 'j') return {parse_real(text, raw), 0.0};
  text.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string re_text = split == std::string::npos ? std::string() : text.substr(0, split);
  std::string im_text = split == std::string::npos ? text : text.substr(split);
  if (im_text.empty() || im_text == "+") im_text = "1";
  if (im_text == "-") im_text = "-1";
  const double re = re_text.empty() ? 0.0 : parse_real(re_text, raw);
  return {re, parse_real(im_text, raw)};
}

std::vector<Index> parse_sweep(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw Error(ErrorCode::ParseError, "sweep must look like a:b:step");
  const Index a = parse_index(parts[0], "sweep");
  const Index b = parse_index(parts[1], "sweep");
  const Index step = parse_index(parts[2], "sweep");
  if (a < 2 || b < a || step < 1) throw Error(ErrorCode::ParseError, "sweep needs 2 <= a <= b and step >= 1");
  std::vector<Index> out;
  for (Index v = a; v <= b; v += step) out.push_back(v);
  return out;
}

KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValues read_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_key_values(in);
}

KroneckerSpec parse_kronecker_spec(const KeyValues& kv) {
  static const char* known[] = {"eta", "rho", "q", "r", "nu", "eigenvalues", "nilpotent",
                                "embed", "density", "seed", "m", "n"};
  for (const auto& [key, value] : kv)
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw Error(ErrorCode::ParseError, "unknown spec key '" + key + "'");
  auto get_index = [&](const char* key, Index fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_index(it->second, key);
  };

  Embedding embed;
  if (auto it = kv.find("embed"); it != kv.end()) embed.kind = parse_embedding(it->second);
  if (auto it = kv.find("density"); it != kv.end()) embed.density = parse_real(trim(it->second), it->second);
  std::uint64_t seed = 0;
  if (auto it = kv.find("seed"); it != kv.end()) seed = static_cast<std::uint64_t>(parse_index(it->second, "seed"));

  const auto eig_it = kv.find("eigenvalues");
  const auto nil_it = kv.find("nilpotent");
  const Index eta = get_index("eta", 0);
  const Index rho = get_index("rho", 0);
  if (eig_it != kv.end() && kv.count("eta"))
    throw Error(ErrorCode::ParseError, "give either eta or eigenvalues, not both");
  if (nil_it != kv.end() && kv.count("rho"))
    throw Error(ErrorCode::ParseError, "give either rho or nilpotent, not both");
  if (eta < 0 || rho < 0) throw Error(ErrorCode::ParseError, "eta and rho must be nonnegative");

  KroneckerSpec spec = KroneckerSpec::sampled(eta, rho, get_index("q", 0), get_index("r", 0), get_index("nu", 0),
                                              embed, seed);
  if (eig_it != kv.end()) {
    spec.finite_eigs.clear();
    for (const std::string& item : split_list(eig_it->second)) {
      FiniteEigenvalue e;
      const auto colon = item.find(':');
      e.value = parse_complex(item.substr(0, colon));
      if (colon != std::string::npos) e.jordan_size = parse_index(item.substr(colon + 1), "eigenvalues");
      if (e.jordan_size < 1) throw Error(ErrorCode::ParseError, "Jordan block size must be positive");
      spec.finite_eigs.push_back(e);
    }
  }
  if (nil_it != kv.end()) {
    spec.nilpotent_sizes.clear();
    for (const std::string& item : split_list(nil_it->second)) {
      const Index s = parse_index(item, "nilpotent");
      if (s < 1) throw Error(ErrorCode::ParseError, "nilpotent block size must be positive");
      spec.nilpotent_sizes.push_back(s);
    }
  }
  if (spec.q < 0 || spec.r < 0 || spec.nu < 0) throw Error(ErrorCode::ParseError, "q, r, nu must be nonnegative");
  if (kv.count("m")) spec.expected_rows = get_index("m", 0);
  if (kv.count("n")) spec.expected_cols = get_index("n", 0);
  return spec;
}

void RunConfig::validate() const {
  if (generate.has_value() == files.has_value())
    throw Error(ErrorCode::InvalidArgument, "give exactly one input: --generate or --matrix-a/--matrix-b");
  if (sweep && !generate) throw Error(ErrorCode::InvalidArgument, "--sweep needs a generated pencil");
  if (vectors && out_path.empty()) throw Error(ErrorCode::InvalidArgument, "--vectors needs --out");
}

}  // namespace pencileig
