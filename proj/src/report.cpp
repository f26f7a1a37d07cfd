#include "hcat/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace hcat {

bool Report::passed() const {
    for (const auto& c : checks_)
        if (!c.pass) return false;
    return true;
}

void Report::check(const std::string& name, double slack, double tol) {
    checks_.push_back({name, slack, tol, std::isfinite(slack) && slack <= tol});
}

void Report::error(const std::string& name, const std::string& what) {
    checks_.push_back({name, std::nan(""), 0.0, false});
    data_["errors"].push_back({{"check", name}, {"error", what}});
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (auto c : other.checks_) {
        c.name = prefix + c.name;
        checks_.push_back(c);
    }
    if (!other.data_.empty()) data_[prefix.empty() ? other.suite_ : prefix] = other.data_;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["suite"] = suite_;
    j["pass"] = passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks_) {
        nlohmann::json cj;
        cj["name"] = c.name;
        if (std::isfinite(c.slack))
            cj["slack"] = c.slack;
        else
            cj["slack"] = nullptr;
        cj["tol"] = c.tol;
        cj["pass"] = c.pass;
        j["checks"].push_back(cj);
    }
    if (!data_.empty()) j["data"] = data_;
    return j;
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "name,slack,tol,pass\n";
    os << std::setprecision(17);
    for (const auto& c : checks_) {
        os << c.name << ',';
        if (std::isfinite(c.slack)) os << c.slack;
        os << ',' << c.tol << ',' << (c.pass ? "true" : "false") << '\n';
    }
    return os.str();
}

}  // namespace hcat
