// Copyright 2026 The avkit Authors.
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

#include <benchmark/benchmark.h>

#include "avkit/corpus.h"
#include "avkit/synthetic.h"
#include "avkit/compress.h"

namespace avkit {
namespace {

std::string Text(size_t docs) {
  SyntheticConfig cfg;
  cfg.authors = 1;
  cfg.docs_per_author = docs;
  std::string out;
  for (const auto& d : GenerateSyntheticCorpus(cfg).authors[0].documents) {
    out += d.text;
    out += ' ';
  }
  return out;
}

void BM_Compress(benchmark::State& state) {
  const std::string text = Text(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lz77::Compress(text));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Compress)->Arg(5)->Arg(20)->Arg(80);

void BM_Ncd(benchmark::State& state) {
  const std::string a = Text(20);
  const std::string b = Text(21);
  for (auto _ : state) benchmark::DoNotOptimize(Ncd(a, b));
}
BENCHMARK(BM_Ncd);

}  // namespace
}  // namespace avkit

BENCHMARK_MAIN();
