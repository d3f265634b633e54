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

#include <array>
#include <span>
#include <string_view>

#include "avkit/features.h"

namespace avkit {
namespace {

// Mirrors core/data/function_words_it.txt.
constexpr std::array<std::string_view, 168> kItalianFunctionWords = {
    "a", "ad", "agli", "ai", "al", "alla", "alle", "allo", "allora", "altro",
    "anche", "ancora", "avere", "ben", "bene", "c", "che", "chi", "ci", "ciò",
    "cioè", "come", "con", "cosa", "così", "cui", "da", "dagli", "dai", "dal",
    "dalla", "dalle", "dallo", "degli", "dei", "del", "dell", "della", "delle",
    "dello", "dentro", "di", "dopo", "dove", "dunque", "e", "ed", "egli",
    "ella", "era", "essere", "esso", "fa", "fare", "fino", "fra", "fu", "già",
    "gli", "ha", "hai", "hanno", "ho", "i", "il", "in", "io", "l", "la", "le",
    "lei", "li", "lo", "loro", "lui", "ma", "me", "mentre", "mi", "mia", "mie",
    "miei", "mio", "molto", "ne", "né", "negli", "nei", "nel", "nell", "nella",
    "nelle", "nello", "no", "noi", "non", "nostra", "nostre", "nostri",
    "nostro", "o", "ogni", "oppure", "per", "perché", "però", "più", "poi",
    "poco", "proprio", "qual", "quale", "quando", "quanto", "quasi", "quel",
    "quella", "quelle", "quelli", "quello", "questa", "queste", "questi",
    "questo", "qui", "se", "sei", "senza", "si", "sì", "sia", "siamo", "siete",
    "sono", "sopra", "sotto", "sta", "stato", "su", "sua", "sue", "sugli",
    "sui", "sul", "sull", "sulla", "sulle", "sullo", "suo", "suoi", "tanto",
    "te", "ti", "tra", "tu", "tua", "tue", "tuo", "tuoi", "tutti", "tutto",
    "un", "una", "uno", "vi", "voi", "vostra", "vostro",
};

}  // namespace

std::span<const std::string_view> DefaultItalianFunctionWords() {
  return kItalianFunctionWords;
}

}  // namespace avkit
