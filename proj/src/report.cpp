#include "lame/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace lame {

namespace {

using ordered_json = nlohmann::ordered_json;

// JSON holds no infinities: map the potential sentinel to a string and
// refuse anything else non-finite.
ordered_json json_number(double value) {
    if (std::isnan(value) || (std::isinf(value) && value > 0.0))
        throw std::logic_error("non-finite value reached a report");
    if (std::isinf(value)) return "-inf";
    return value;
}

// RFC 4180: quote fields holding separators or quotes, doubling the quotes.
std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void Report::add_verdict(std::string name, bool pass, double value, double tolerance) {
    verdicts.push_back({std::move(name), pass, value, tolerance});
}

bool Report::all_pass() const {
    for (const Verdict& v : verdicts)
        if (!v.pass) return false;
    return true;
}

std::string format_number(double value) {
    if (std::isnan(value) || (std::isinf(value) && value > 0.0))
        throw std::logic_error("non-finite value reached a report");
    if (std::isinf(value)) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string render_json(const Report& report) {
    ordered_json root;
    root["command"] = report.command;
    ordered_json prov = ordered_json::object();
    for (const auto& [key, val] : report.provenance) prov[key] = val;
    root["provenance"] = std::move(prov);

    ordered_json verdicts = ordered_json::array();
    for (const Verdict& v : report.verdicts) {
        ordered_json item;
        item["name"] = v.name;
        item["pass"] = v.pass;
        item["value"] = json_number(v.value);
        item["tolerance"] = json_number(v.tolerance);
        verdicts.push_back(std::move(item));
    }
    root["verdicts"] = std::move(verdicts);

    ordered_json notes = ordered_json::object();
    for (const auto& [key, val] : report.notes) notes[key] = val;
    root["notes"] = std::move(notes);

    ordered_json certs = ordered_json::array();
    for (const NamedCertificate& nc : report.certificates) {
        ordered_json item;
        item["name"] = nc.name;
        item["feasible"] = nc.certificate.feasible;
        item["max_violation"] = json_number(nc.certificate.max_violation);
        item["rows"] = nc.certificate.rows;
        item["cols"] = nc.certificate.cols;
        ordered_json sums = ordered_json::array();
        for (double s : nc.certificate.row_sums) sums.push_back(json_number(s));
        item["row_sums"] = std::move(sums);
        ordered_json matrix = ordered_json::array();
        for (double x : nc.certificate.matrix) matrix.push_back(json_number(x));
        item["matrix"] = std::move(matrix);
        certs.push_back(std::move(item));
    }
    root["certificates"] = std::move(certs);

    ordered_json tables = ordered_json::array();
    for (const NamedTable& nt : report.tables) {
        ordered_json item;
        item["name"] = nt.name;
        item["columns"] = nt.table.columns;
        ordered_json rows = ordered_json::array();
        for (const TableRow& row : nt.table.rows) {
            ordered_json r;
            ordered_json values = ordered_json::array();
            for (double v : row.values) values.push_back(json_number(v));
            r["values"] = std::move(values);
            r["error"] = row.error;
            rows.push_back(std::move(r));
        }
        item["rows"] = std::move(rows);
        tables.push_back(std::move(item));
    }
    root["tables"] = std::move(tables);

    return root.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
    std::vector<std::vector<std::string>> lines;

    lines.push_back({"table", "name", "value"});
    for (const auto& [key, val] : report.provenance) lines.push_back({"provenance", key, val});

    lines.push_back({"table", "name", "pass", "value", "tolerance"});
    for (const Verdict& v : report.verdicts)
        lines.push_back({"verdicts", v.name, v.pass ? "true" : "false", format_number(v.value),
                         format_number(v.tolerance)});

    if (!report.notes.empty()) {
        lines.push_back({"table", "name", "value"});
        for (const auto& [key, val] : report.notes) lines.push_back({"notes", key, val});
    }

    if (!report.certificates.empty()) {
        lines.push_back({"table", "name", "feasible", "max_violation", "rows", "cols"});
        for (const NamedCertificate& nc : report.certificates)
            lines.push_back({"certificates", nc.name, nc.certificate.feasible ? "true" : "false",
                             format_number(nc.certificate.max_violation),
                             std::to_string(nc.certificate.rows),
                             std::to_string(nc.certificate.cols)});
    }

    for (const NamedTable& nt : report.tables) {
        std::vector<std::string> header = {"table"};
        header.insert(header.end(), nt.table.columns.begin(), nt.table.columns.end());
        header.push_back("error");
        lines.push_back(std::move(header));
        for (const TableRow& row : nt.table.rows) {
            std::vector<std::string> fields = {nt.name};
            for (double v : row.values) fields.push_back(format_number(v));
            for (std::size_t i = row.values.size(); i < nt.table.columns.size(); ++i)
                fields.emplace_back();
            fields.push_back(row.error);
            lines.push_back(std::move(fields));
        }
    }

    std::size_t width = 0;
    for (const auto& line : lines) width = std::max(width, line.size());

    std::string out;
    for (const auto& line : lines) {
        for (std::size_t i = 0; i < width; ++i) {
            if (i) out += ',';
            if (i < line.size()) out += csv_escape(line[i]);
        }
        out += "\r\n";
    }
    return out;
}

std::string render_report(const Report& report, const std::string& format) {
    if (format == "json") return render_json(report);
    if (format == "csv") return render_csv(report);
    throw std::logic_error("unknown output format");
}

}  // namespace lame
