// Copyright 2026 The throttlesim Authors.
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

#include "throttlesim/instance_io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "text_util.h"

namespace throttlesim {
namespace {

using internal::FormatDouble;

void WriteSequence(std::ostream& os, const std::vector<double>& points) {
  for (double x : points) os << FormatDouble(x) << '\n';
}

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // Next significant line, or false at EOF.
  bool Next(std::string& out) {
    while (std::getline(is_, line_)) {
      ++number_;
      const std::string_view s = internal::Trim(line_);
      if (s.empty() || s.front() == '#') continue;
      out = std::string(s);
      return true;
    }
    return false;
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw std::invalid_argument("instance line " + std::to_string(number_) +
                                ": " + what);
  }

 private:
  std::istream& is_;
  std::string line_;
  int64_t number_ = 0;
};

std::vector<double> ReadSequence(LineReader& in) {
  std::vector<double> points;
  std::string line;
  while (in.Next(line)) {
    if (line == "end") return points;
    try {
      points.push_back(internal::ParseDouble(line));
    } catch (const std::invalid_argument& e) {
      in.Fail(e.what());
    }
  }
  in.Fail("missing 'end'");
}

DiscreteDistribution ReadDistribution(LineReader& in, double vmax) {
  std::vector<Atom> atoms;
  std::string line;
  while (in.Next(line)) {
    if (line == "end") {
      try {
        return DiscreteDistribution(std::move(atoms), vmax);
      } catch (const std::invalid_argument& e) {
        in.Fail(e.what());
      }
    }
    const auto f = internal::SplitWhitespace(line);
    if (f.size() != 2) in.Fail("expected 'point weight'");
    try {
      atoms.push_back(
          {internal::ParseDouble(f[0]), internal::ParseDouble(f[1])});
    } catch (const std::invalid_argument& e) {
      in.Fail(e.what());
    }
  }
  in.Fail("missing 'end'");
}

SequenceMixture ReadMixture(LineReader& in) {
  SequenceMixture mix;
  std::string line;
  while (in.Next(line)) {
    if (line == "end") {
      if (mix.sequences.empty()) in.Fail("mixture without components");
      return mix;
    }
    const auto f = internal::SplitWhitespace(line);
    try {
      if (f.size() == 2 && f[0] == "component") {
        mix.weights.push_back(internal::ParseDouble(f[1]));
        mix.sequences.emplace_back();
      } else if (f.size() == 1 && !mix.sequences.empty()) {
        mix.sequences.back().push_back(internal::ParseDouble(f[0]));
      } else {
        in.Fail("expected 'component <weight>' or a value");
      }
    } catch (const std::invalid_argument& e) {
      in.Fail(e.what());
    }
  }
  in.Fail("missing 'end'");
}

}  // namespace

void WriteInstance(std::ostream& os, const InstanceDocument& doc) {
  const Instance& inst = doc.instance;
  if (inst.name.empty() ||
      inst.name.find_first_of(" \t\r\n") != std::string::npos) {
    throw std::invalid_argument("instance name must be one nonempty word");
  }
  os << "name " << inst.name << '\n'
     << "horizon " << inst.horizon << '\n'
     << "rho " << FormatDouble(inst.rho) << '\n'
     << "vmax " << FormatDouble(inst.vmax) << '\n'
     << "mode " << InfoModeName(doc.mode) << '\n'
     << "price_grid " << FormatDouble(inst.price_grid) << '\n';

  std::visit(
      [&](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, DiscreteDistribution>) {
          os << "values iid\n";
          src.WriteText(os);
        } else if constexpr (std::is_same_v<T, FixedSequence>) {
          os << "values fixed\n";
          WriteSequence(os, src.points);
        } else if constexpr (std::is_same_v<T, SequenceMixture>) {
          os << "values mixture\n";
          for (std::size_t i = 0; i < src.sequences.size(); ++i) {
            os << "component " << FormatDouble(src.weights[i]) << '\n';
            WriteSequence(os, src.sequences[i]);
          }
        } else {
          throw std::invalid_argument("adaptive value sources cannot be saved");
        }
        os << "end\n";
      },
      inst.values);

  std::visit(
      [&](const auto& src) {
        using T = std::decay_t<decltype(src)>;
        if constexpr (std::is_same_v<T, DiscreteDistribution>) {
          os << "prices iid\n";
          src.WriteText(os);
          os << "end\n";
        } else if constexpr (std::is_same_v<T, FixedSequence>) {
          os << "prices fixed\n";
          WriteSequence(os, src.points);
          os << "end\n";
        } else {
          if (src.kind() != "entry_responsive" || src.params().size() != 2) {
            throw std::invalid_argument("adaptive price rule '" + src.kind() +
                                        "' cannot be saved");
          }
          os << "prices adaptive entry_responsive "
             << FormatDouble(src.params()[0]) << ' '
             << FormatDouble(src.params()[1]) << '\n';
        }
      },
      inst.prices);
}

std::string InstanceToText(const InstanceDocument& doc) {
  std::ostringstream os;
  WriteInstance(os, doc);
  return os.str();
}

InstanceDocument ReadInstance(std::istream& is) {
  LineReader in(is);
  InstanceDocument doc;
  Instance& inst = doc.instance;
  bool have_values = false, have_prices = false, have_horizon = false,
       have_rho = false;
  std::string line;
  while (in.Next(line)) {
    const auto f = internal::SplitWhitespace(line);
    const std::string_view key = f[0];
    try {
      if (key == "name" && f.size() == 2) {
        inst.name = std::string(f[1]);
      } else if (key == "horizon" && f.size() == 2) {
        inst.horizon = internal::ParseInt(f[1]);
        have_horizon = true;
      } else if (key == "rho" && f.size() == 2) {
        inst.rho = internal::ParseDouble(f[1]);
        have_rho = true;
      } else if (key == "vmax" && f.size() == 2) {
        inst.vmax = internal::ParseDouble(f[1]);
      } else if (key == "mode" && f.size() == 2) {
        doc.mode = ParseInfoMode(f[1]);
      } else if (key == "price_grid" && f.size() == 2) {
        inst.price_grid = internal::ParseDouble(f[1]);
      } else if (key == "values" && f.size() == 2) {
        if (f[1] == "iid") {
          inst.values = ReadDistribution(in, inst.vmax);
        } else if (f[1] == "fixed") {
          inst.values = FixedSequence{ReadSequence(in)};
        } else if (f[1] == "mixture") {
          inst.values = ReadMixture(in);
        } else {
          in.Fail("unknown value source '" + std::string(f[1]) + "'");
        }
        have_values = true;
      } else if (key == "prices" && f.size() >= 2) {
        if (f[1] == "iid" && f.size() == 2) {
          inst.prices = ReadDistribution(in, inst.vmax);
        } else if (f[1] == "fixed" && f.size() == 2) {
          inst.prices = FixedSequence{ReadSequence(in)};
        } else if (f[1] == "adaptive" && f.size() == 5 &&
                   f[2] == "entry_responsive") {
          inst.prices = AdaptiveOracle::EntryResponsive(
              internal::ParseDouble(f[3]), internal::ParseDouble(f[4]));
        } else {
          in.Fail("unknown price source '" + line + "'");
        }
        have_prices = true;
      } else {
        in.Fail("unrecognized line '" + line + "'");
      }
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      if (what.rfind("instance line", 0) == 0) throw;
      in.Fail(what);
    }
  }
  if (!have_horizon || !have_rho || !have_values || !have_prices) {
    throw std::invalid_argument(
        "instance: horizon, rho, values and prices are required");
  }
  if (inst.name.empty()) inst.name = "file";
  inst.Validate();
  return doc;
}

InstanceDocument ReadInstanceFile(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open instance file " + path);
  return ReadInstance(is);
}

}  // namespace throttlesim
