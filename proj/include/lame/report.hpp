#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lame/majorization.hpp"
#include "lame/measures.hpp"

namespace lame {

// One named check with the tolerance it was judged against.
struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double tolerance = 0.0;
};

struct NamedCertificate {
    std::string name;
    TransferCertificate certificate;
};

struct NamedTable {
    std::string name;
    ConvergenceTable table;
};

// Machine-readable run result: verdicts, optional certificate and table
// payloads, free-form notes, and the resolved configuration echo.
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<Verdict> verdicts;
    std::vector<std::pair<std::string, std::string>> notes;
    std::vector<NamedCertificate> certificates;
    std::vector<NamedTable> tables;

    void add_verdict(std::string name, bool pass, double value, double tolerance);
    bool all_pass() const;
};

// 17 significant digits; negative infinity becomes the "-inf" sentinel.
// NaN or positive infinity must never reach an output file and throws.
std::string format_number(double value);

std::string render_json(const Report& report);
std::string render_csv(const Report& report);

// Renders in the requested format ("json" or "csv").
std::string render_report(const Report& report, const std::string& format);

}  // namespace lame
