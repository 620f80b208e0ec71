#include "mills/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mills/big.hpp"
#include "mills/bounds.hpp"
#include "mills/continued_fraction.hpp"
#include "mills/int_polynomial.hpp"
#include "mills/mills_polynomials.hpp"
#include "mills/oracle.hpp"
#include "mills/prec_real.hpp"
#include "mills/report.hpp"

namespace mills {

namespace {

constexpr std::size_t kMaxGridPoints = 100000;
constexpr int kErrorDigits = 3;

struct Common {
  Precision precision = kDefaultPrecision;
  std::string format = "text";
  int digits = 20;
  std::string out;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--precision", common.precision, "Working precision in bits")
      ->check(CLI::Range(kMinPrecision, static_cast<Precision>(1) << 20));
  sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--digits", common.digits, "Significant digits in decimal output")->check(CLI::Range(1, 1000));
  sub->add_option("--out", common.out, "Write the output to a file");
}

std::string scalar_text(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

bool is_table(const Json& value) { return value.is_array() && !value.empty() && value.front().is_object(); }

std::string render_table_text(const Json& rows) {
  std::vector<std::string> keys;
  for (const auto& item : rows.front().items()) keys.push_back(item.key());
  std::vector<std::size_t> widths(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    widths[i] = keys[i].size();
    for (const auto& row : rows) widths[i] = std::max(widths[i], scalar_text(row[keys[i]]).size());
  }
  auto line = [&](auto cell) {
    std::string text;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      std::string c = cell(i);
      if (i + 1 < keys.size()) c.resize(widths[i] + 2, ' ');
      text += c;
    }
    return text + "\n";
  };
  std::string text = line([&](std::size_t i) { return keys[i]; });
  for (const auto& row : rows) text += line([&](std::size_t i) { return scalar_text(row[keys[i]]); });
  return text;
}

std::string render_text(const Json& doc) {
  std::string text;
  for (const auto& item : doc.items()) {
    if (is_table(item.value())) {
      text += "\n" + render_table_text(item.value());
    } else if (item.value().is_object()) {
      for (const auto& inner : item.value().items()) {
        text += item.key() + "." + inner.key() + ": " + scalar_text(inner.value()) + "\n";
      }
    } else if (!item.value().is_array()) {
      text += item.key() + ": " + scalar_text(item.value()) + "\n";
    }
  }
  return text;
}

std::string render_csv_rows(const Json& rows) {
  std::vector<std::string> keys;
  for (const auto& item : rows.front().items()) keys.push_back(item.key());
  std::string text;
  for (std::size_t i = 0; i < keys.size(); ++i) text += (i ? "," : "") + csv_field(keys[i]);
  text += "\r\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) text += (i ? "," : "") + csv_field(scalar_text(row[keys[i]]));
    text += "\r\n";
  }
  return text;
}

// A document with a "rows" table renders as that table; otherwise its
// scalar fields form a single row.
std::string render_csv(const Json& doc) {
  if (doc.contains("rows") && is_table(doc["rows"])) return render_csv_rows(doc["rows"]);
  Json row;
  for (const auto& item : doc.items()) {
    if (!item.value().is_structured()) row[item.key()] = item.value();
  }
  return render_csv_rows(Json::array({row}));
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
}

void emit(const std::string& text, const Common& common, std::ostream& out) {
  if (common.out.empty()) {
    out << text;
  } else {
    write_file(common.out, text);
  }
}

std::string render(const Json& doc, const Common& common) {
  if (common.format == "json") return doc.dump(2) + "\n";
  if (common.format == "csv") return render_csv(doc);
  return render_text(doc);
}

std::string decimal(const ApproxReal& value, int digits) { return value.value().to_decimal(digits); }

std::string error_text(const PrecReal& error) { return error.to_decimal(kErrorDigits); }

std::optional<Precision> precision_from_environment() {
  const char* text = std::getenv("MILLS_PRECISION_BITS");
  if (text == nullptr || *text == '\0') return std::nullopt;
  char* end = nullptr;
  const long value = std::strtol(text, &end, 10);
  if (*end != '\0' || value < kMinPrecision || value > (1L << 20)) {
    throw CLI::ValidationError("MILLS_PRECISION_BITS", "must be an integer in [64, 1048576]");
  }
  return value;
}

// --- poly -----------------------------------------------------------------

int cmd_poly(const std::string& which, std::size_t n, const Common& common, std::ostream& out) {
  IntPolynomial poly;
  if (which == "P") {
    poly = pq_pair(n).p;
  } else if (which == "Q") {
    poly = pq_pair(n).q;
  } else if (which == "Delta") {
    poly = IntPolynomial::monomial(1, 2) + IntPolynomial::constant(BigInt(static_cast<unsigned long>(4 * n + 4)));
  } else {
    const QuadraticTriple triple = quadratic_triple(n);
    poly = which == "A" ? triple.a : which == "B" ? triple.b : triple.c;
  }
  if (common.format == "text") {
    emit(to_string(poly) + "\n", common, out);
    return kExitPass;
  }
  Json doc;
  doc["which"] = which;
  doc["n"] = n;
  doc["polynomial"] = to_string(poly);
  emit(render(doc, common), common, out);
  return kExitPass;
}

// --- bounds ---------------------------------------------------------------

int cmd_bounds(const std::string& family_text, std::size_t n, const std::string& x_text, const Common& common,
               std::ostream& out) {
  const Family family = parse_family(family_text, &n);
  const BigRational xr = parse_rational(x_text);
  const Precision prec = common.precision;
  const PrecReal x(xr, prec);
  const int digits = common.digits;

  Json doc;
  doc["family"] = family_name(family, n);
  doc["n"] = n;
  doc["x"] = to_string(xr);
  doc["precision_bits"] = prec;

  // Evaluate the bound first: it raises the family-specific domain errors.
  switch (family) {
    case Family::kRationalEnclosure: {
      const Enclosure e = first_order_enclosure(n, x, prec);
      doc["lower"] = decimal(e.lower, digits);
      doc["upper"] = decimal(e.upper, digits);
      break;
    }
    case Family::kConvergentError:
      doc["convergent"] = decimal(convergent_value(n, x, prec), digits);
      doc["error_bound"] = decimal(first_order_error_bound(n, x, prec), digits);
      break;
    case Family::kErrorDecrease:
      doc["error_bound"] = decimal(first_order_error_bound(n, x, prec), digits);
      doc["next_error_bound"] = decimal(first_order_error_bound(n + 1, x, prec), digits);
      break;
    case Family::kLogConvexity:
      doc["value"] = decimal(log_convexity_check(n, x, prec), digits);
      break;
    case Family::kKomatsu:
      doc["lower"] = decimal(komatsu_lower(x, prec), digits);
      break;
    case Family::kSzarekWerner:
      doc["upper"] = decimal(szarek_werner_upper(x, prec), digits);
      break;
    case Family::kSecondOrder:
    case Family::kSecondOrderSharper: {
      const BoundValue bound = second_order_bound(n, x, prec);
      doc[bound.role == Role::kLower ? "lower" : "upper"] = decimal(bound.value, digits);
      break;
    }
    case Family::kDerivativeSign:
      doc["derivative"] = decimal(phi_derivative(n, x, prec), digits);
      break;
  }

  const OracleValue phi = phi_series(x, prec);
  doc["phi"] = phi.value.to_decimal(digits);
  doc["phi_error"] = error_text(phi.error_bound);

  const std::vector<Certificate> certificates = certify_grid(family, {n}, {xr}, prec);
  bool all_pass = true;
  for (const auto& c : certificates) {
    const std::string prefix = c.family.ends_with("_sharper") ? "sharper_" : "";
    doc[prefix + "margin"] = decimal(c.margin, digits);
    doc[prefix + "verdict"] = c.pass ? "pass" : "fail";
    all_pass = all_pass && c.pass;
  }
  emit(render(doc, common), common, out);
  return all_pass ? kExitPass : kExitFail;
}

// --- verify ---------------------------------------------------------------

std::vector<BigRational> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  for (std::string part; std::getline(stream, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw DomainError("grid must be start:stop:step");
  const BigRational start = parse_rational(parts[0]);
  const BigRational stop = parse_rational(parts[1]);
  const BigRational step = parse_rational(parts[2]);
  if (sgn(step) <= 0) throw DomainError("grid step must be positive");
  if (stop < start) throw DomainError("grid stop must not be below start");
  const BigRational count = (stop - start) / step;
  if (count >= kMaxGridPoints) throw DomainError("grid has too many points");
  std::vector<BigRational> xs;
  for (BigRational x = start; x <= stop; x += step) xs.push_back(x);
  return xs;
}

std::vector<std::size_t> orders_up_to(std::size_t n_max) {
  std::vector<std::size_t> orders(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) orders[n] = n;
  return orders;
}

std::vector<BigRational> domain_points(Family family, std::size_t n, const std::vector<BigRational>& xs) {
  std::vector<BigRational> kept;
  std::copy_if(xs.begin(), xs.end(), std::back_inserter(kept), [&](const BigRational& x) {
    return in_domain(family, n, x);
  });
  return kept;
}

// Series and quadrature oracles agree within their combined error bounds.
Certificate oracle_agreement(const BigRational& xr, Precision prec) {
  const PrecReal x(xr, prec);
  const OracleValue series = phi_series(x, prec);
  const OracleValue quadrature = phi_quadrature(x, prec);
  const PrecReal margin = series.error_bound + quadrature.error_bound - abs(series.value - quadrature.value);
  return {"Oracle_agreement", 0, xr, ApproxReal::exact(margin), prec, margin.sign() > 0};
}

std::vector<Certificate> run_certificates(std::size_t n_max, const std::vector<BigRational>& xs, Precision prec,
                                          const PolynomialTable& table) {
  std::vector<Certificate> all;
  auto append = [&all](std::vector<Certificate> part) {
    std::move(part.begin(), part.end(), std::back_inserter(all));
  };
  const std::vector<std::size_t> orders = orders_up_to(n_max);
  for (Family family : {Family::kRationalEnclosure, Family::kConvergentError, Family::kErrorDecrease,
                        Family::kLogConvexity, Family::kKomatsu, Family::kSzarekWerner, Family::kSecondOrder,
                        Family::kDerivativeSign}) {
    if (family == Family::kSecondOrder) {
      for (std::size_t n : orders) {
        const auto points = domain_points(family, n, xs);
        if (!points.empty()) append(certify_grid(family, {n}, points, prec, table));
      }
      continue;
    }
    const auto points = domain_points(family, 0, xs);
    if (!points.empty()) append(certify_grid(family, orders, points, prec, table));
  }
  for (const auto& x : domain_points(Family::kKomatsu, 0, xs)) all.push_back(oracle_agreement(x, prec));
  return all;
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix;
}

int cmd_verify(std::size_t n_max, const std::string& grid, std::optional<std::size_t> corrupt, const Common& common,
               std::ostream& out) {
  const std::vector<BigRational> xs = parse_grid(grid);
  const Precision prec = common.precision;

  std::unique_ptr<PolynomialTable> corrupted;
  if (corrupt) corrupted = PolynomialTable::with_corruption(*corrupt);
  const PolynomialTable& table = corrupted ? *corrupted : default_table();

  const std::vector<IdentityCheck> identities = verify_identities(n_max, table);
  const std::vector<Certificate> certificates = run_certificates(n_max, xs, prec, table);

  const auto failed_identities =
      std::count_if(identities.begin(), identities.end(), [](const IdentityCheck& c) { return !c.pass; });
  const auto failed_certificates =
      std::count_if(certificates.begin(), certificates.end(), [](const Certificate& c) { return !c.pass; });
  const bool all_pass = failed_identities == 0 && failed_certificates == 0;

  Json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  Json config;
  config["n_max"] = n_max;
  config["grid"] = grid;
  config["grid_points"] = xs.size();
  config["precision_bits"] = prec;
  config["digits"] = common.digits;
  if (corrupt) config["corrupt_table"] = *corrupt;
  doc["config"] = config;
  Json summary;
  summary["identities"] = identities.size();
  summary["identities_failed"] = failed_identities;
  summary["certificates"] = certificates.size();
  summary["certificates_failed"] = failed_certificates;
  summary["verdict"] = all_pass ? "pass" : "fail";
  doc["summary"] = summary;

  if (common.format == "json") {
    doc["identities"] = to_json(identities);
    doc["certificates"] = to_json(certificates, common.digits);
    emit(doc.dump(2) + "\n", common, out);
  } else if (common.format == "csv") {
    const std::string certificate_table = certificates_csv(certificates, common.digits);
    const std::string identity_table = identities_csv(identities);
    if (common.out.empty()) {
      out << certificate_table << "\r\n" << identity_table;
    } else {
      write_file(common.out, certificate_table);
      write_file(sibling_path(common.out, ".identities.csv"), identity_table);
    }
  } else {
    Json failures = Json::array();
    for (const auto& c : identities) {
      if (!c.pass) failures.push_back({{"kind", "identity"}, {"name", c.identity}, {"n", c.n}, {"x", ""}, {"margin", ""}});
    }
    for (const auto& c : certificates) {
      if (!c.pass) {
        failures.push_back({{"kind", "certificate"},
                            {"name", c.family},
                            {"n", c.n},
                            {"x", to_string(c.x)},
                            {"margin", decimal(c.margin, common.digits)}});
      }
    }
    doc["failures"] = failures;
    emit(render_text(doc), common, out);
  }
  return all_pass ? kExitPass : kExitFail;
}

// --- beta -----------------------------------------------------------------

int cmd_beta(std::size_t m, const std::string& tolerance_text, const Common& common, std::ostream& out) {
  const BigRational tolerance = tolerance_text.empty() ? default_beta_tolerance() : parse_rational(tolerance_text);
  const BetaRoot root = beta(m, tolerance);
  const IntPolynomial& a = quadratic_triple(2 * m + 1).a;
  const std::string name = "A_" + std::to_string(2 * m + 1);
  auto sign_text = [](int s) { return s < 0 ? "< 0" : s > 0 ? "> 0" : "= 0"; };

  Json doc;
  doc["m"] = m;
  doc["beta"] = root.value.to_decimal(common.digits);
  doc["exact"] = root.low == root.high;
  doc["low"] = to_string(root.low);
  doc["high"] = to_string(root.high);
  doc["width"] = to_string(BigRational(root.high - root.low));
  doc["tolerance"] = to_string(tolerance);
  doc["sign_low"] = name + "(low) " + sign_text(sgn(evaluate(a, root.low)));
  doc["sign_high"] = name + "(high) " + sign_text(sgn(evaluate(a, root.high)));
  emit(render(doc, common), common, out);
  return kExitPass;
}

// --- cf -------------------------------------------------------------------

int cmd_cf(const std::string& x_text, std::size_t depth, const Common& common, std::ostream& out) {
  const BigRational xr = parse_rational(x_text);
  if (sgn(xr) <= 0) throw DomainError("the continued fraction is defined for x > 0");
  if (depth == 0) throw DomainError("depth must be at least 1");
  const Precision prec = common.precision;
  const int digits = common.digits;
  const PrecReal x(xr, prec);
  const OracleValue phi = phi_series(x, prec);

  Json doc;
  doc["x"] = to_string(xr);
  doc["depth"] = depth;
  doc["precision_bits"] = prec;
  doc["expansion"] = render_expansion(std::min<std::size_t>(depth, 8));
  doc["phi"] = phi.value.to_decimal(digits);
  Json rows = Json::array();
  for (std::size_t n = 1; n <= depth; ++n) {
    const BigRational convergent = cf_convergent(n, xr);
    // The ladder of depth n - 1 equals the convergent of order n.
    const PrecReal ladder = n == 1 ? PrecReal(1L, prec) / x : cf_ladder_eval(n - 1, x, prec);
    Json row;
    row["n"] = n;
    row["b"] = to_string(cf_b(n - 1));
    row["convergent"] = to_string(convergent);
    row["value"] = PrecReal(convergent, prec).to_decimal(digits);
    row["ladder"] = ladder.to_decimal(digits);
    row["ladder_error"] = error_text(abs(ladder - phi.value));
    rows.push_back(row);
  }
  doc["rows"] = rows;
  emit(render(doc, common), common, out);
  return kExitPass;
}

// --- phi ------------------------------------------------------------------

int cmd_phi(const std::string& x_text, std::size_t n, const std::string& method, const Common& common,
            std::ostream& out) {
  const BigRational xr = parse_rational(x_text);
  const Precision prec = common.precision;
  const PrecReal x(xr, prec);
  Json doc;
  doc["x"] = to_string(xr);
  doc["n"] = n;
  doc["precision_bits"] = prec;
  if (n > 0) {
    const ApproxReal derivative = phi_derivative(n, x, prec);
    doc["method"] = "series";
    doc["value"] = decimal(derivative, common.digits);
    doc["error_bound"] = error_text(derivative.error());
  } else {
    const OracleValue value = method == "quadrature" ? phi_quadrature(x, prec) : phi_series(x, prec);
    doc["method"] = std::string(to_string(value.method));
    doc["value"] = value.value.to_decimal(common.digits);
    doc["error_bound"] = error_text(value.error_bound);
  }
  emit(render(doc, common), common, out);
  return kExitPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bounds for the Mills ratio", std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Common common;
  try {
    if (auto env = precision_from_environment()) common.precision = *env;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string which;
  std::size_t n = 0;
  auto* poly = app.add_subcommand("poly", "Print P_n, Q_n, A_n, B_n, C_n or x^2 + 4n + 4");
  poly->add_option("--which", which, "Polynomial")->required()->check(CLI::IsMember({"P", "Q", "A", "B", "C", "Delta"}));
  poly->add_option("--n", n, "Order");
  add_common(poly, common);

  std::string family;
  std::string x_text;
  auto* bounds = app.add_subcommand("bounds", "Evaluate one bound and certify it against the oracle");
  bounds->add_option("--family", family, "eq15, eq16, eq16_decreasing, eq17, eq18, eq19, i, iN, sign")->required();
  bounds->add_option("--n", n, "Order");
  bounds->add_option("--x", x_text, "Point, as an exact rational or decimal")->required();
  add_common(bounds, common);

  std::size_t n_max = 10;
  std::string grid = "1/10:10:1/10";
  std::optional<std::size_t> corrupt;
  auto* verify = app.add_subcommand("verify", "Run the identity suite and certify every family on a grid");
  verify->add_option("--n-max", n_max, "Largest order");
  verify->add_option("--grid", grid, "start:stop:step, exact rationals");
  verify->add_option("--corrupt-table", corrupt)->group("");
  add_common(verify, common);

  std::size_t m = 0;
  std::string tolerance;
  auto* beta_cmd = app.add_subcommand("beta", "Bracket the root of A_{2m+1} in (0, 1]");
  beta_cmd->add_option("--m", m, "Index")->required();
  beta_cmd->add_option("--tolerance", tolerance, "Bracket width (default 2^-40)");
  add_common(beta_cmd, common);

  std::size_t depth = 10;
  auto* cf = app.add_subcommand("cf", "Continued fraction convergents and ladder values");
  cf->add_option("--x", x_text, "Point x > 0")->required();
  cf->add_option("--depth", depth, "Number of convergents");
  add_common(cf, common);

  std::string method = "series";
  auto* phi = app.add_subcommand("phi", "Evaluate the Mills ratio or its n-th derivative");
  phi->add_option("--x", x_text, "Point")->required();
  phi->add_option("--n", n, "Derivative order");
  phi->add_option("--method", method, "series or quadrature")->check(CLI::IsMember({"series", "quadrature"}));
  add_common(phi, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (poly->parsed()) return cmd_poly(which, n, common, out);
    if (bounds->parsed()) return cmd_bounds(family, n, x_text, common, out);
    if (verify->parsed()) return cmd_verify(n_max, grid, corrupt, common, out);
    if (beta_cmd->parsed()) return cmd_beta(m, tolerance, common, out);
    if (cf->parsed()) return cmd_cf(x_text, depth, common, out);
    if (phi->parsed()) return cmd_phi(x_text, n, method, common, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mills
