#include "gmsep/serialize.hpp"

#include "gmsep/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace gmsep {

std::string format_sig(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

double round_sig(double value) {
  return std::strtod(format_sig(value).c_str(), nullptr);
}

namespace {

using nlohmann::json;

json opt_num(const std::optional<double>& v) {
  if (!v) return nullptr;
  return round_sig(*v);
}

const char* op_name(PrimitiveOp::Kind kind) {
  switch (kind) {
    case PrimitiveOp::Kind::loss: return "loss";
    case PrimitiveOp::Kind::amp: return "amp";
    case PrimitiveOp::Kind::noise: return "noise";
    case PrimitiveOp::Kind::b1: return "b1";
    case PrimitiveOp::Kind::rotate: return "rotate";
    case PrimitiveOp::Kind::squeeze: return "squeeze";
  }
  return "?";
}

const char* param_key(PrimitiveOp::Kind kind) {
  switch (kind) {
    case PrimitiveOp::Kind::loss: return "l";
    case PrimitiveOp::Kind::amp: return "a";
    case PrimitiveOp::Kind::noise: return "n";
    case PrimitiveOp::Kind::b1: return "eps";
    case PrimitiveOp::Kind::rotate: return "theta";
    case PrimitiveOp::Kind::squeeze: return "z";
  }
  return "?";
}

double parse_number(const std::string& text, const std::string& context) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw std::invalid_argument("channel spec: bad number '" + text + "' in " +
                                context);
  }
  return v;
}

Quadrature parse_quad(const std::string& text) {
  if (text == "x") return Quadrature::x;
  if (text == "p") return Quadrature::p;
  throw std::invalid_argument("channel spec: quad must be 'x' or 'p', got '" +
                              text + "'");
}

}  // namespace

json spec_to_json(const ChannelSpec& spec) {
  json arr = json::array();
  for (const PrimitiveOp& op : spec.ops) {
    json rec{{"op", op_name(op.kind)}, {param_key(op.kind), round_sig(op.value)}};
    if (op.kind == PrimitiveOp::Kind::b1) {
      rec["quad"] = op.quad == Quadrature::x ? "x" : "p";
    }
    arr.push_back(std::move(rec));
  }
  return arr;
}

ChannelSpec spec_from_json(const json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument("channel spec: expected a JSON array of ops");
  }
  ChannelSpec spec;
  for (const json& rec : j) {
    if (!rec.is_object() || !rec.contains("op") || !rec["op"].is_string()) {
      throw std::invalid_argument("channel spec: each op needs an 'op' string");
    }
    const std::string name = rec["op"].get<std::string>();
    const auto value = [&rec, &name](const char* key) {
      if (!rec.contains(key) || !rec[key].is_number()) {
        throw std::invalid_argument("channel spec: op '" + name +
                                    "' needs numeric '" + key + "'");
      }
      return rec[key].get<double>();
    };
    if (name == "loss") {
      spec.ops.push_back(PrimitiveOp::loss(value("l")));
    } else if (name == "amp") {
      spec.ops.push_back(PrimitiveOp::amp(value("a")));
    } else if (name == "noise") {
      spec.ops.push_back(PrimitiveOp::noise(value("n")));
    } else if (name == "b1") {
      Quadrature q = Quadrature::x;
      if (rec.contains("quad")) q = parse_quad(rec["quad"].get<std::string>());
      spec.ops.push_back(PrimitiveOp::b1(value("eps"), q));
    } else if (name == "rotate") {
      spec.ops.push_back(PrimitiveOp::rotate(value("theta")));
    } else if (name == "squeeze") {
      spec.ops.push_back(PrimitiveOp::squeeze(value("z")));
    } else {
      throw std::invalid_argument("channel spec: unknown op '" + name + "'");
    }
  }
  return spec;
}

ChannelSpec parse_inline_spec(const std::string& text) {
  ChannelSpec spec;
  if (text.empty()) return spec;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = text.find(',', pos);
    const std::string entry =
        text.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    std::vector<std::string> parts;
    size_t p = 0;
    while (p <= entry.size()) {
      const size_t colon = entry.find(':', p);
      parts.push_back(entry.substr(
          p, colon == std::string::npos ? std::string::npos : colon - p));
      if (colon == std::string::npos) break;
      p = colon + 1;
    }
    if (parts.empty() || parts[0].empty()) {
      throw std::invalid_argument("channel spec: empty op in '" + text + "'");
    }
    const std::string& name = parts[0];
    const auto one_param = [&parts, &name]() {
      if (parts.size() != 2) {
        throw std::invalid_argument("channel spec: op '" + name +
                                    "' takes exactly one parameter");
      }
      return parse_number(parts[1], name);
    };
    if (name == "loss") {
      spec.ops.push_back(PrimitiveOp::loss(one_param()));
    } else if (name == "amp") {
      spec.ops.push_back(PrimitiveOp::amp(one_param()));
    } else if (name == "noise") {
      spec.ops.push_back(PrimitiveOp::noise(one_param()));
    } else if (name == "b1") {
      if (parts.size() != 3) {
        throw std::invalid_argument(
            "channel spec: b1 takes two parameters, e.g. b1:0.4:x");
      }
      spec.ops.push_back(
          PrimitiveOp::b1(parse_number(parts[1], name), parse_quad(parts[2])));
    } else if (name == "rotate") {
      spec.ops.push_back(PrimitiveOp::rotate(one_param()));
    } else if (name == "squeeze") {
      spec.ops.push_back(PrimitiveOp::squeeze(one_param()));
    } else {
      throw std::invalid_argument("channel spec: unknown op '" + name + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spec;
}

json decision_report_to_json(const DecisionReport& report) {
  const auto side = [](const CanonicalForm& cf, json& j, const char* amp_key,
                       const char* loss_key, const char* kind_key) {
    j[kind_key] = to_string(cf.kind);
    if (cf.kind == CanonicalForm::Kind::amp_then_loss) {
      j[amp_key] = round_sig(cf.amp);
      j[loss_key] = round_sig(cf.loss);
    } else if (cf.kind == CanonicalForm::Kind::entanglement_breaking) {
      j[amp_key] = nullptr;
      j[loss_key] = nullptr;
    } else {
      j[amp_key] = 1.0;
      j[loss_key] = 0.0;
    }
  };
  json j;
  j["verdict"] = to_string(report.verdict);
  j["boundary"] = report.boundary;
  j["threshold_sum"] = opt_num(report.threshold_sum);
  j["margin"] = opt_num(report.margin);
  side(report.canonical_a, j, "a_prime_a", "l_prime_a", "canonical_a");
  side(report.canonical_b, j, "a_prime_b", "l_prime_b", "canonical_b");
  j["rule_trace"] = report.rule_trace;
  return j;
}

json swap_result_to_json(const SwapParams& params, const SwapResult& result) {
  json j;
  j["params"] = {{"r", round_sig(params.r)},       {"a_a", round_sig(params.a_a)},
                 {"a_b", round_sig(params.a_b)},   {"l_a", round_sig(params.l_a)},
                 {"l_b", round_sig(params.l_b)},   {"n_a_noise", round_sig(params.noise_a)},
                 {"n_b_noise", round_sig(params.noise_b)}};
  j["n_a"] = round_sig(result.std_form.n_a);
  j["n_b"] = round_sig(result.std_form.n_b);
  j["c"] = round_sig(result.std_form.c);
  if (result.closed_form) {
    j["closed_form"] = {{"n_a", round_sig(result.closed_form->n_a)},
                        {"n_b", round_sig(result.closed_form->n_b)},
                        {"c", round_sig(result.closed_form->c)}};
  } else {
    j["closed_form"] = nullptr;
  }
  j["duan"] = opt_num(result.duan);
  if (result.kappa_a > 0.0 && result.kappa_b > 0.0) {
    j["duan_limit"] =
        round_sig(-2.0 * result.eta / std::sqrt(result.kappa_a * result.kappa_b));
  } else {
    j["duan_limit"] = nullptr;
  }
  j["logneg"] = round_sig(result.logneg);
  j["kappa_a"] = round_sig(result.kappa_a);
  j["kappa_b"] = round_sig(result.kappa_b);
  j["eta"] = round_sig(result.eta);
  return j;
}

json scan_rows_to_json(const std::vector<ScanRow>& rows) {
  json arr = json::array();
  for (const ScanRow& row : rows) {
    json j;
    j["l_a"] = round_sig(row.params.l_a);
    j["l_b"] = round_sig(row.params.l_b);
    j["a_a"] = round_sig(row.params.a_a);
    j["a_b"] = round_sig(row.params.a_b);
    j["n_a_noise"] = round_sig(row.params.noise_a);
    j["n_b_noise"] = round_sig(row.params.noise_b);
    j["r"] = round_sig(row.params.r);
    j["verdict"] = to_string(row.verdict);
    j["threshold_sum"] = round_sig(row.threshold_sum);
    j["duan"] = opt_num(row.duan);
    j["duan_limit"] = opt_num(row.duan_limit);
    j["logneg"] = round_sig(row.logneg);
    arr.push_back(std::move(j));
  }
  return arr;
}

json dual_povm_result_to_json(const DualPovmResult& result) {
  json j;
  j["separable"] = result.separable;
  j["margin"] = round_sig(result.margin);
  j["a_star_a"] = round_sig(result.a_star_a);
  j["l_star_a"] = round_sig(result.l_star_a);
  j["a_star_b"] = round_sig(result.a_star_b);
  j["l_star_b"] = round_sig(result.l_star_b);
  return j;
}

}  // namespace gmsep
