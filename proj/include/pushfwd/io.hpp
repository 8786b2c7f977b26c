#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pushfwd/types.hpp"

namespace pushfwd::io {

// Shortest decimal string that parses back to the exact same double;
// non-finite values come out as inf/-inf/nan.
std::string format_double(double v);

// Grid expression "start:stop:count" with an optional ":log" suffix.
// count >= 1; count == 1 yields {start}; log spacing needs both endpoints
// positive.  Endpoints are hit exactly.
std::vector<double> parse_grid(const std::string& text);

// Columns q,value,path; doubles in round-trip form.
void write_profile_csv(std::ostream& os, const DensityProfile& p);

// {"grid": [...], "values": [...], "path": [...]} with non-finite values
// encoded as the strings "inf", "-inf", "nan".
nlohmann::json profile_to_json(const DensityProfile& p);

// Atom lists serialize as {"atoms": [{"coeff": c, "box": [[lo,hi],...],
// "a": [...], "b": [...]}, ...]}; a bare top-level array is also accepted
// on input.
nlohmann::json atoms_to_json(const AtomSet& atoms);
AtomSet atoms_from_json(const nlohmann::json& j);
AtomSet load_atoms(const std::string& path);

// A number when finite, otherwise the string form.
nlohmann::json json_number(double v);

void write_text_file(const std::string& path, const std::string& content);

// Standalone matplotlib script plotting value against q from the CSV.
std::string plot_script(const std::string& csv_path);

}  // namespace pushfwd::io
