#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hcat {

struct Check {
    std::string name;
    double slack = 0;  // measured deviation; passes when slack <= tol
    double tol = 0;
    bool pass = false;
};

class Report {
public:
    explicit Report(std::string suite) : suite_(std::move(suite)) {}

    const std::string& suite() const { return suite_; }
    const std::vector<Check>& checks() const { return checks_; }
    bool passed() const;

    // Records slack <= tol (non-finite slack fails).
    void check(const std::string& name, double slack, double tol);
    // Records a suite error as a failing check.
    void error(const std::string& name, const std::string& what);
    void merge(const Report& other, const std::string& prefix = "");

    nlohmann::json& data() { return data_; }
    const nlohmann::json& data() const { return data_; }

    nlohmann::json to_json() const;
    std::string to_csv() const;

private:
    std::string suite_;
    std::vector<Check> checks_;
    nlohmann::json data_ = nlohmann::json::object();
};

}  // namespace hcat
