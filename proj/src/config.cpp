#include "cnp/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cnp/errors.hpp"

namespace cnp {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw InvalidParameter(where + ": expected an object with \"re\" and \"im\"");
    if (!j["re"].is_number() || !j["im"].is_number())
        throw InvalidParameter(where + ": \"re\" and \"im\" must be numbers");
    return {j["re"].get<double>(), j["im"].get<double>()};
}

BlaschkeProduct parse_constraint(const json& j) {
    if (!j.is_array()) throw InvalidParameter("\"constraint\": expected an array of zeros");
    std::vector<BlaschkeZero> zeros;
    int idx = 0;
    for (const auto& item : j) {
        const std::string where = "\"constraint\"[" + std::to_string(idx++) + "]";
        BlaschkeZero z;
        z.alpha = parse_complex(item, where);
        z.mult = item.contains("mult") ? item["mult"].get<int>() : 1;
        if (std::abs(z.alpha) >= 1.0)
            throw InvalidParameter(where + ": zero must lie strictly inside the unit disk");
        if (z.mult < 1) throw InvalidParameter(where + ": \"mult\" must be >= 1");
        zeros.push_back(z);
    }
    return BlaschkeProduct(std::move(zeros));
}

Eigen::MatrixXcd parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw InvalidParameter(where + ": expected a nonempty matrix");
    const int k = static_cast<int>(j.size());
    Eigen::MatrixXcd m(k, k);
    for (int a = 0; a < k; ++a) {
        const auto& row = j[static_cast<size_t>(a)];
        if (!row.is_array() || static_cast<int>(row.size()) != k)
            throw InvalidParameter(where + ": rows must all have length " + std::to_string(k));
        for (int b = 0; b < k; ++b)
            m(a, b) = parse_complex(row[static_cast<size_t>(b)],
                                    where + "[" + std::to_string(a) + "][" + std::to_string(b) + "]");
    }
    return m;
}

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidParameter(std::string("config parse error: ") + e.what());
    }
}

}  // namespace

ProblemConfig parse_problem_config(const std::string& text) {
    return parse_problem_config(text, true);
}

ProblemConfig parse_problem_config(const std::string& text, bool targets_required) {
    const json j = parse_json_text(text);
    if (!j.contains("constraint")) throw InvalidParameter("missing \"constraint\"");
    if (!j.contains("nodes")) throw InvalidParameter("missing \"nodes\"");
    BlaschkeProduct b = parse_constraint(j["constraint"]);

    std::vector<Complex> nodes;
    int idx = 0;
    for (const auto& item : j["nodes"])
        nodes.push_back(parse_complex(item, "\"nodes\"[" + std::to_string(idx++) + "]"));

    ProblemConfig config;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw InvalidParameter("\"seed\": expected an unsigned integer");
        config.seed = j["seed"].get<uint64_t>();
        config.seed_given = true;
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (t.contains("tau_psd")) config.tau_psd = t["tau_psd"].get<double>();
        if (config.tau_psd <= 0.0) throw InvalidParameter("\"tolerances.tau_psd\" must be positive");
    }

    const bool has_scalar = j.contains("targets");
    const bool has_matrix = j.contains("matrix_targets");
    if (has_scalar && has_matrix)
        throw InvalidParameter("give either \"targets\" or \"matrix_targets\", not both");
    if (has_scalar) {
        std::vector<Complex> targets;
        idx = 0;
        for (const auto& item : j["targets"])
            targets.push_back(parse_complex(item, "\"targets\"[" + std::to_string(idx++) + "]"));
        config.problem = InterpolationProblem::scalar(std::move(b), std::move(nodes), std::move(targets));
    } else if (has_matrix) {
        std::vector<Eigen::MatrixXcd> targets;
        idx = 0;
        for (const auto& item : j["matrix_targets"])
            targets.push_back(parse_matrix(item, "\"matrix_targets\"[" + std::to_string(idx++) + "]"));
        config.problem = InterpolationProblem::matrix(std::move(b), std::move(nodes), std::move(targets));
    } else if (targets_required) {
        throw InvalidParameter("missing \"targets\" (or \"matrix_targets\")");
    } else {
        config.problem = InterpolationProblem::nodes_only(std::move(b), std::move(nodes));
    }
    return config;
}

LatticeConfig parse_lattice_config(const std::string& text) {
    const json j = parse_json_text(text);
    if (!j.contains("modulus")) throw InvalidParameter("missing \"modulus\"");
    const int n = j["modulus"].get<int>();
    if (n < 1) throw InvalidParameter("\"modulus\" must be >= 1");
    if (!j.contains("subspaces") || !j["subspaces"].is_array())
        throw InvalidParameter("missing \"subspaces\" array");
    LatticeConfig config;
    config.modulus = n;
    int si = 0;
    for (const auto& sub : j["subspaces"]) {
        const std::string where = "\"subspaces\"[" + std::to_string(si++) + "]";
        BlaschkeProduct psi;
        if (sub.contains("psi")) psi = parse_constraint(sub["psi"]);
        std::vector<Polynomial> basis;
        if (sub.contains("basis")) {
            int bi = 0;
            for (const auto& coeffs : sub["basis"]) {
                const std::string pwhere = where + ".basis[" + std::to_string(bi++) + "]";
                if (!coeffs.is_array()) throw InvalidParameter(pwhere + ": expected coefficient list");
                std::vector<Complex> c;
                int ci = 0;
                for (const auto& item : coeffs)
                    c.push_back(parse_complex(item, pwhere + "[" + std::to_string(ci++) + "]"));
                basis.emplace_back(std::move(c));
            }
        }
        config.subspaces.push_back(InvariantSubspace::make(std::move(psi), std::move(basis), n));
    }
    return config;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cnp
