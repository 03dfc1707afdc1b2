// Copyright 2026 The splitmesh Authors
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

#include "splitmesh/state.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>

namespace splitmesh {

namespace {

void check_grid_side(int grid_side) {
  if (grid_side < 1) {
    throw std::invalid_argument("grid side must be >= 1, got " +
                                std::to_string(grid_side));
  }
}

void check_channel(ChannelIndex k, int grid_side) {
  const int channels = 2 * grid_side;
  if (k < 1 || k > channels) {
    throw std::out_of_range("channel " + std::to_string(k) +
                            " out of range 1.." + std::to_string(channels));
  }
}

}  // namespace

double vector_norm(std::span<const Complex> amplitudes) {
  double sum = 0.0;
  for (const Complex& a : amplitudes) sum += std::norm(a);
  return std::sqrt(sum);
}

PureState::PureState(int grid_side, std::vector<Complex> amplitudes)
    : amps_(std::move(amplitudes)) {
  check_grid_side(grid_side);
  if (static_cast<int>(amps_.size()) != 2 * grid_side) {
    throw std::invalid_argument(
        "amplitude vector has length " + std::to_string(amps_.size()) +
        ", expected " + std::to_string(2 * grid_side));
  }
  const double n = vector_norm(amps_);
  if (!(std::abs(n - 1.0) <= kStateNormTolerance)) {
    throw std::invalid_argument("state norm is " + std::to_string(n) +
                                ", must be 1 within 1e-9");
  }
}

PureState PureState::basis(ChannelIndex k, int grid_side) {
  check_grid_side(grid_side);
  check_channel(k, grid_side);
  std::vector<Complex> amps(2 * grid_side, Complex(0.0, 0.0));
  amps[k - 1] = Complex(1.0, 0.0);
  return PureState(grid_side, std::move(amps));
}

PureState PureState::superposition(const std::vector<Term>& terms,
                                   int grid_side, bool auto_normalize) {
  check_grid_side(grid_side);
  if (terms.empty()) {
    throw std::invalid_argument("superposition needs at least one term");
  }
  std::vector<Complex> amps(2 * grid_side, Complex(0.0, 0.0));
  std::set<ChannelIndex> seen;
  for (const Term& t : terms) {
    check_channel(t.channel, grid_side);
    if (!seen.insert(t.channel).second) {
      throw std::invalid_argument("duplicate channel " +
                                  std::to_string(t.channel) +
                                  " in superposition");
    }
    amps[t.channel - 1] = t.amplitude;
  }
  const double n = vector_norm(amps);
  if (auto_normalize) {
    if (n == 0.0) {
      throw std::invalid_argument("cannot normalize the zero vector");
    }
    for (Complex& a : amps) a /= n;
  } else if (!(std::abs(n - 1.0) <= kStateNormTolerance)) {
    throw std::invalid_argument(
        "superposition norm is " + std::to_string(n) +
        ", must be 1 within 1e-9 (or pass auto_normalize)");
  }
  return PureState(grid_side, std::move(amps));
}

Complex PureState::amplitude(ChannelIndex k) const {
  check_channel(k, grid_side());
  return amps_[k - 1];
}

std::vector<double> PureState::probabilities() const {
  std::vector<double> probs(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) probs[i] = std::norm(amps_[i]);
  return probs;
}

double PureState::norm() const { return vector_norm(amps_); }

void PureState::rotate_pair(ChannelIndex ka, ChannelIndex kb, double cos_t,
                            double sin_t) {
  check_channel(ka, grid_side());
  check_channel(kb, grid_side());
  if (ka == kb) {
    throw std::invalid_argument("rotate_pair needs two distinct channels");
  }
  const Complex a = amps_[ka - 1];
  const Complex b = amps_[kb - 1];
  const Complex cross(0.0, sin_t);
  amps_[ka - 1] = cos_t * a + cross * b;
  amps_[kb - 1] = cross * a + cos_t * b;
}

namespace {

// Parses a full double out of [pos, text.size()); advances pos. Throws when
// nothing could be consumed.
double parse_double_at(const std::string& text, std::size_t& pos) {
  const char* begin = text.c_str() + pos;
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin) {
    throw std::invalid_argument("expected a number at '" + text.substr(pos) +
                                "'");
  }
  pos += static_cast<std::size_t>(end - begin);
  return value;
}

// "re", "re+imi" or "re-imi", e.g. "0.5", "0-1i".
Complex parse_complex_literal(const std::string& text) {
  std::size_t pos = 0;
  const double re = parse_double_at(text, pos);
  if (pos == text.size()) return Complex(re, 0.0);
  if (text[pos] != '+' && text[pos] != '-') {
    throw std::invalid_argument("malformed complex literal '" + text + "'");
  }
  const double im = parse_double_at(text, pos);
  if (pos + 1 != text.size() || text[pos] != 'i') {
    throw std::invalid_argument("malformed complex literal '" + text +
                                "' (imaginary part must end in 'i')");
  }
  return Complex(re, im);
}

int parse_channel_index(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty channel index");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("channel index '" + text +
                                  "' is not a positive integer");
    }
  }
  try {
    return std::stoi(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("channel index '" + text + "' out of int range");
  }
}

}  // namespace

PureState parse_state_literal(std::string_view text, int grid_side,
                              bool auto_normalize) {
  if (text.empty()) throw std::invalid_argument("empty state literal");
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("state literal must be whitespace-free");
    }
  }
  const std::string s(text);
  if (s.find(':') == std::string::npos) {
    return PureState::basis(parse_channel_index(s), grid_side);
  }
  std::vector<PureState::Term> terms;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string term =
        s.substr(start, comma == std::string::npos ? comma : comma - start);
    const std::size_t colon = term.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == term.size()) {
      throw std::invalid_argument("malformed superposition term '" + term +
                                  "' (expected k:amplitude)");
    }
    terms.push_back({parse_channel_index(term.substr(0, colon)),
                     parse_complex_literal(term.substr(colon + 1))});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return PureState::superposition(terms, grid_side, auto_normalize);
}

}  // namespace splitmesh
