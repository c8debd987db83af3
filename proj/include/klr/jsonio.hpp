#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "klr/pbw.hpp"
#include "klr/qarith.hpp"
#include "klr/shuffle.hpp"

namespace klr {

// Insertion-ordered JSON so every artifact serializes byte-identically.
using Json = nlohmann::ordered_json;

// Integer vectors (words, roots, shapes) as compact comma-joined keys.
std::string int_key(const std::vector<int>& v);
std::vector<int> int_unkey(const std::string& s);

// Laurent polynomial as an ascending [exponent, "coefficient"] list;
// coefficients ride as strings so arbitrary precision survives the trip.
Json laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j);

// Character as an object keyed by word, highest word first.
Json character_to_json(const ShuffleElt& e);
ShuffleElt character_from_json(const Json& j);

Json cartan_to_json(const CartanData& cd);
CartanData cartan_from_json(const Json& j);

// Whole cuspidal table, including the datum and reduced word that define it.
Json cuspidal_table_to_json(CuspidalTable& t);
// Install every entry into a table already built over the same order;
// set() revalidates each entry, so a stale cache cannot change results.
void cuspidal_table_load(const Json& j, CuspidalTable& t);

// Content address of a table: the datum and the reduced word, hashed.
std::uint64_t fnv64(const std::string& s);
std::string cuspidal_cache_key(const CartanData& cd, const Word& word);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace klr
