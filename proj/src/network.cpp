// Copyright 2026 The rptree Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rptree/network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rptree/digest.hpp"
#include "rptree/error.hpp"

namespace rpt {
namespace {

using json = nlohmann::json;

constexpr int kFormatVersion = 1;
constexpr std::string_view kNonFiniteTag = "@rpt-nonfinite:";

double apply(Activation act, double z) {
  switch (act) {
    case Activation::identity:
      return z;
    case Activation::sigmoid:
      return 1.0 / (1.0 + std::exp(-z));
    case Activation::relu:
      return z > 0.0 ? z : 0.0;
    case Activation::elu:
      return z > 0.0 ? z : std::expm1(z);
  }
  return z;
}

// Derivative with respect to the pre-activation z, given z and a = act(z).
double derivative(Activation act, double z, double a) {
  switch (act) {
    case Activation::identity:
      return 1.0;
    case Activation::sigmoid:
      return a * (1.0 - a);
    case Activation::relu:
      return z > 0.0 ? 1.0 : 0.0;
    case Activation::elu:
      return z > 0.0 ? 1.0 : a + 1.0;
  }
  return 1.0;
}

// Python's json module writes bare NaN / Infinity tokens. Turn them into
// tagged strings so the loader can report them as non-finite values rather
// than as a generic syntax error.
std::string tag_nonfinite_literals(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      out.push_back(c);
      if (c == '\\' && i + 1 < text.size()) {
        out.push_back(text[++i]);
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      out.push_back(c);
      continue;
    }
    bool matched = false;
    for (std::string_view token : {"-Infinity", "Infinity", "NaN"}) {
      if (text.substr(i, token.size()) == token) {
        out += '"';
        out += kNonFiniteTag;
        out += token;
        out += '"';
        i += token.size() - 1;
        matched = true;
        break;
      }
    }
    if (!matched) out.push_back(c);
  }
  return out;
}

double read_number(const json& value, const std::string& field) {
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s.rfind(kNonFiniteTag, 0) == 0) {
      throw Error(Errc::non_finite,
                  field + ": non-finite value " + s.substr(kNonFiniteTag.size()));
    }
  }
  if (!value.is_number()) {
    throw Error(Errc::parse, field + ": expected a number");
  }
  const double v = value.get<double>();
  if (!std::isfinite(v)) {
    throw Error(Errc::non_finite, field + ": non-finite value");
  }
  return v;
}

int read_size(const json& obj, const char* key, const std::string& where) {
  const std::string field = where + "." + key;
  if (!obj.contains(key)) throw Error(Errc::parse, field + ": missing");
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw Error(Errc::parse, field + ": expected a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) {
    throw Error(Errc::parse, where + "." + key + ": missing");
  }
  return obj.at(key);
}

}  // namespace

std::string_view to_string(Activation act) {
  switch (act) {
    case Activation::identity:
      return "identity";
    case Activation::sigmoid:
      return "sigmoid";
    case Activation::relu:
      return "relu";
    case Activation::elu:
      return "elu";
  }
  return "identity";
}

Activation parse_activation(std::string_view name) {
  if (name == "identity" || name == "linear") return Activation::identity;
  if (name == "sigmoid" || name == "logistic") return Activation::sigmoid;
  if (name == "relu") return Activation::relu;
  if (name == "elu") return Activation::elu;
  throw Error(Errc::parse, "unknown activation '" + std::string(name) + "'");
}

Network::Network(std::vector<Eigen::MatrixXd> weights,
                 std::vector<Eigen::VectorXd> biases,
                 std::vector<Activation> activations, std::string digest)
    : weights_(std::move(weights)),
      biases_(std::move(biases)),
      activations_(std::move(activations)) {
  const std::size_t depth = weights_.size();
  if (depth == 0) {
    throw Error(Errc::shape_mismatch, "network needs at least one weight layer");
  }
  if (biases_.size() != depth || activations_.size() != depth) {
    throw Error(Errc::shape_mismatch,
                "weights, biases and activations must have one entry per layer");
  }
  sizes_.resize(depth + 1);
  for (std::size_t l = 0; l < depth; ++l) {
    const auto& w = weights_[l];
    if (w.rows() < 1 || w.cols() < 1) {
      throw Error(Errc::shape_mismatch,
                  "W(" + std::to_string(l) + "): empty weight matrix");
    }
    sizes_[l] = static_cast<int>(w.rows());
    if (l > 0 && w.rows() != weights_[l - 1].cols()) {
      throw Error(Errc::shape_mismatch,
                  "W(" + std::to_string(l) + ") has " + std::to_string(w.rows()) +
                      " rows but layer " + std::to_string(l) + " has " +
                      std::to_string(weights_[l - 1].cols()) + " nodes");
    }
    if (biases_[l].size() != w.rows()) {
      throw Error(Errc::shape_mismatch,
                  "bias(" + std::to_string(l) + ") has length " +
                      std::to_string(biases_[l].size()) + ", expected " +
                      std::to_string(w.rows()));
    }
    if (!w.allFinite() || !biases_[l].allFinite()) {
      throw Error(Errc::non_finite,
                  "layer " + std::to_string(l) + ": non-finite weight or bias");
    }
  }
  sizes_[depth] = static_cast<int>(weights_.back().cols());
  if (sizes_[0] != 1) {
    throw Error(Errc::shape_mismatch, "output layer must have exactly one node, has " +
                                          std::to_string(sizes_[0]));
  }
  digest_ = digest.empty() ? sha256_hex(serialize_network(*this)) : std::move(digest);
}

Network parse_network(std::string_view text) {
  json doc;
  try {
    doc = json::parse(tag_nonfinite_literals(text));
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, std::string("weight file: ") + e.what());
  } catch (const json::out_of_range& e) {
    // Number literals beyond the double range.
    throw Error(e.id == 406 ? Errc::non_finite : Errc::parse, std::string("weight file: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::parse, "weight file: top level must be an object");
  const json& version = require(doc, "format_version", "weight file");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw Error(Errc::parse, "format_version: unsupported value " + version.dump());
  }
  const json& layers = require(doc, "layers", "weight file");
  if (!layers.is_array() || layers.empty()) {
    throw Error(Errc::parse, "layers: expected a non-empty array");
  }

  const std::size_t depth = layers.size();
  std::vector<Eigen::MatrixXd> weights(depth);
  std::vector<Eigen::VectorXd> biases(depth);
  std::vector<Activation> activations(depth);
  int previous_out = -1;
  for (std::size_t k = 0; k < depth; ++k) {
    const std::string where = "layers[" + std::to_string(k) + "]";
    const json& layer = layers[k];
    if (!layer.is_object()) throw Error(Errc::parse, where + ": expected an object");
    const int in_size = read_size(layer, "in_size", where);
    const int out_size = read_size(layer, "out_size", where);
    if (previous_out >= 0 && in_size != previous_out) {
      throw Error(Errc::shape_mismatch,
                  where + ".in_size: " + std::to_string(in_size) +
                      " does not match previous out_size " + std::to_string(previous_out));
    }
    previous_out = out_size;

    // File order is input -> output; layer 0 is the output.
    const std::size_t l = depth - 1 - k;
    Eigen::MatrixXd w(out_size, in_size);
    const json& wj = require(layer, "weights", where);
    const std::string wfield = where + ".weights";
    if (!wj.is_array()) throw Error(Errc::parse, wfield + ": expected an array");
    const bool nested = !wj.empty() && wj.front().is_array();
    if (nested) {
      if (wj.size() != static_cast<std::size_t>(out_size)) {
        throw Error(Errc::shape_mismatch, wfield + ": has " + std::to_string(wj.size()) +
                                              " rows, expected out_size " +
                                              std::to_string(out_size));
      }
      for (int r = 0; r < out_size; ++r) {
        const json& row = wj[static_cast<std::size_t>(r)];
        const std::string rfield = wfield + "[" + std::to_string(r) + "]";
        if (!row.is_array() || row.size() != static_cast<std::size_t>(in_size)) {
          throw Error(Errc::shape_mismatch,
                      rfield + ": has " + std::to_string(row.is_array() ? row.size() : 0) +
                          " columns, expected in_size " + std::to_string(in_size));
        }
        for (int c = 0; c < in_size; ++c) {
          w(r, c) = read_number(row[static_cast<std::size_t>(c)],
                                rfield + "[" + std::to_string(c) + "]");
        }
      }
    } else {
      if (wj.size() != static_cast<std::size_t>(out_size) * static_cast<std::size_t>(in_size)) {
        throw Error(Errc::shape_mismatch,
                    wfield + ": has " + std::to_string(wj.size()) + " entries, expected " +
                        std::to_string(out_size * in_size));
      }
      for (int r = 0; r < out_size; ++r) {
        for (int c = 0; c < in_size; ++c) {
          const std::size_t flat = static_cast<std::size_t>(r * in_size + c);
          w(r, c) = read_number(wj[flat], wfield + "[" + std::to_string(flat) + "]");
        }
      }
    }

    const json& bj = require(layer, "bias", where);
    if (!bj.is_array() || bj.size() != static_cast<std::size_t>(out_size)) {
      throw Error(Errc::shape_mismatch, where + ".bias: expected " +
                                            std::to_string(out_size) + " entries");
    }
    Eigen::VectorXd b(out_size);
    for (int r = 0; r < out_size; ++r) {
      b(r) = read_number(bj[static_cast<std::size_t>(r)],
                         where + ".bias[" + std::to_string(r) + "]");
    }

    const json& aj = require(layer, "activation", where);
    if (!aj.is_string()) throw Error(Errc::parse, where + ".activation: expected a string");
    try {
      activations[l] = parse_activation(aj.get<std::string>());
    } catch (const Error& e) {
      throw Error(Errc::parse, where + ".activation: " + e.what());
    }
    weights[l] = std::move(w);
    biases[l] = std::move(b);
  }
  if (previous_out != 1) {
    throw Error(Errc::shape_mismatch, "layers[" + std::to_string(depth - 1) +
                                          "].out_size: output layer must have 1 node");
  }
  return Network(std::move(weights), std::move(biases), std::move(activations),
                 sha256_hex(text));
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open weight file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

std::string serialize_network(const Network& net) {
  json layers = json::array();
  for (int l = net.depth() - 1; l >= 0; --l) {
    const auto& w = net.weights(l);
    json rows = json::array();
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < w.cols(); ++c) row.push_back(w(r, c));
      rows.push_back(std::move(row));
    }
    json bias = json::array();
    for (Eigen::Index r = 0; r < net.bias(l).size(); ++r) bias.push_back(net.bias(l)(r));
    json layer;
    layer["in_size"] = w.cols();
    layer["out_size"] = w.rows();
    layer["weights"] = std::move(rows);
    layer["bias"] = std::move(bias);
    layer["activation"] = std::string(to_string(net.activation(l)));
    layers.push_back(std::move(layer));
  }
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["layers"] = std::move(layers);
  return doc.dump(2) + "\n";
}

std::vector<Eigen::VectorXd> forward_from(const Network& net, int layer,
                                          const Eigen::VectorXd& a) {
  if (layer < 0 || layer > net.depth()) {
    throw Error(Errc::invalid_argument, "forward: layer " + std::to_string(layer) +
                                            " outside 0.." + std::to_string(net.depth()));
  }
  if (a.size() != net.size(layer)) {
    throw Error(Errc::shape_mismatch, "forward: activation vector has length " +
                                          std::to_string(a.size()) + ", layer " +
                                          std::to_string(layer) + " has " +
                                          std::to_string(net.size(layer)) + " nodes");
  }
  if (!a.allFinite()) throw Error(Errc::non_finite, "forward: non-finite input");
  std::vector<Eigen::VectorXd> acts(static_cast<std::size_t>(net.depth()) + 1);
  acts[static_cast<std::size_t>(layer)] = a;
  for (int l = layer - 1; l >= 0; --l) {
    Eigen::VectorXd z = net.weights(l) * acts[static_cast<std::size_t>(l + 1)] + net.bias(l);
    const Activation act = net.activation(l);
    acts[static_cast<std::size_t>(l)] = z.unaryExpr([act](double v) { return apply(act, v); });
  }
  return acts;
}

std::vector<Eigen::VectorXd> forward(const Network& net, const Eigen::VectorXd& x) {
  return forward_from(net, net.depth(), x);
}

Eigen::VectorXd gradient(const Network& net, const NodeRef& target, int wrt_layer,
                         const Eigen::VectorXd& x) {
  if (!net.contains(target)) {
    throw Error(Errc::invalid_argument, "gradient: target node outside the network");
  }
  if (wrt_layer <= target.layer || wrt_layer > net.depth()) {
    throw Error(Errc::invalid_argument,
                "gradient: layer " + std::to_string(wrt_layer) +
                    " must lie strictly below target layer " + std::to_string(target.layer) +
                    " and at most " + std::to_string(net.depth()));
  }
  const auto acts = forward(net, x);

  // g holds d a_target / d a_l while walking l = target.layer .. wrt_layer.
  Eigen::VectorXd g = Eigen::VectorXd::Zero(net.size(target.layer));
  g(target.index - 1) = 1.0;
  for (int l = target.layer; l < wrt_layer; ++l) {
    const auto& a = acts[static_cast<std::size_t>(l)];
    const Eigen::VectorXd z = net.weights(l) * acts[static_cast<std::size_t>(l + 1)] + net.bias(l);
    const Activation act = net.activation(l);
    Eigen::VectorXd dz(z.size());
    for (Eigen::Index r = 0; r < z.size(); ++r) dz(r) = g(r) * derivative(act, z(r), a(r));
    g = net.weights(l).transpose() * dz;
  }
  return g;
}

}  // namespace rpt
