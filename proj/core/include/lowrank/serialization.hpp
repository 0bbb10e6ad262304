#pragma once

#include <iosfwd>
#include <string>

#include "lowrank/cp_tensor.hpp"
#include "lowrank/ht_tensor.hpp"

namespace lowrank {

/// Binary envelope: one JSON header line terminated by '\n', then little-endian
/// float64 (re, im) pairs.
///
/// CP header: {"format":"cp","N":..,"r":..,"Q":[..],"b":[..]}; coefficients in
/// term-major, dimension-middle, mode-minor order.
/// HT header: {"format":"ht","N":..,"Q":[..],"b":[..],"shapes":[[rows,cols],..]};
/// node matrices in tree pre-order, each column-major.
void write_cp(std::ostream& out, const CPTensor& f);
CPTensor read_cp(std::istream& in);

void write_ht(std::ostream& out, const HTTensor& h);
HTTensor read_ht(std::istream& in);

void save_cp(const std::string& path, const CPTensor& f);
CPTensor load_cp(const std::string& path);

}  // namespace lowrank
