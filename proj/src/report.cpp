#include "jumploci/cli/report.hpp"

#include <algorithm>
#include <sstream>

namespace jumploci::cli {

namespace {

bool scalar(const json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render_text(std::ostringstream& out, const json& j, int indent) {
    const std::string pad(indent, ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (scalar(v)) {
                out << pad << k << ": " << scalar_text(v) << '\n';
            } else if (v.empty()) {
                out << pad << k << ": " << (v.is_array() ? "[]" : "{}") << '\n';
            } else if (v.is_array() && std::all_of(v.begin(), v.end(), scalar)) {
                out << pad << k << ": [";
                for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << scalar_text(v[i]);
                out << "]\n";
            } else {
                out << pad << k << ":\n";
                render_text(out, v, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (scalar(v)) {
                out << pad << "- " << scalar_text(v) << '\n';
            } else {
                out << pad << "-\n";
                render_text(out, v, indent + 2);
            }
        }
    } else {
        out << pad << scalar_text(j) << '\n';
    }
}

} // namespace

std::string render(const json& j, bool pretty) {
    if (!pretty) return j.dump() + "\n";
    std::ostringstream out;
    render_text(out, j, 0);
    return out.str();
}

} // namespace jumploci::cli
