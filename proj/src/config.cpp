#include "lindblad/config.hpp"

#include <set>

#include <json.hpp>

#include "lindblad/csv.hpp"

namespace lindblad {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw SchemaError(path + ": " + what);
}

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& known) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!known.count(key)) schema_error(path + "." + key, "unknown field");
    }
}

const json& require_field(const json& obj, const std::string& path, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) schema_error(path, std::string("missing field '") + key + "'");
    return *it;
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) schema_error(path, "expected a number");
    return v.get<double>();
}

std::size_t as_positive_integer(const json& v, const std::string& path) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
        schema_error(path, "expected a positive integer");
    }
    return static_cast<std::size_t>(v.get<std::uint64_t>());
}

cplx parse_complex(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        schema_error(path, "complex entries are two-element arrays [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Matrix parse_matrix(const json& v, const std::string& path, std::size_t dim) {
    if (!v.is_array() || v.size() != dim) {
        schema_error(path, "expected " + std::to_string(dim) + " rows");
    }
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const json& row = v[i];
        const std::string row_path = path + "[" + std::to_string(i) + "]";
        if (!row.is_array() || row.size() != dim) {
            schema_error(row_path, "expected " + std::to_string(dim) + " entries");
        }
        for (std::size_t j = 0; j < dim; ++j) {
            m(i, j) = parse_complex(row[j], row_path + "[" + std::to_string(j) + "]");
        }
    }
    return m;
}

Matrix named_operator(const std::string& name, const std::string& path, std::size_t dim) {
    if (name == "identity") return ops::identity(dim);
    Matrix op;
    if (name == "sigma_x") op = ops::sigma_x();
    else if (name == "sigma_y") op = ops::sigma_y();
    else if (name == "sigma_z") op = ops::sigma_z();
    else if (name == "sigma_minus") op = ops::sigma_minus();
    else if (name == "sigma_plus") op = ops::sigma_plus();
    else schema_error(path, "unknown operator name '" + name + "'");
    if (op.rows() != dim) {
        schema_error(path, "operator '" + name + "' is 2x2 but dim is " + std::to_string(dim));
    }
    return op;
}

OperatorTerm parse_term(const json& v, const std::string& path, std::size_t dim) {
    if (!v.is_object()) schema_error(path, "expected an object");
    require_keys(v, path, {"op", "matrix", "coeff", "scale"});
    const bool has_op = v.contains("op");
    const bool has_matrix = v.contains("matrix");
    if (has_op == has_matrix) {
        schema_error(path, "exactly one of 'op' or 'matrix' is required");
    }

    OperatorTerm term;
    if (has_op) {
        const json& name = v["op"];
        if (!name.is_string()) schema_error(path + ".op", "expected a string");
        term.op = named_operator(name.get<std::string>(), path + ".op", dim);
    } else {
        term.op = parse_matrix(v["matrix"], path + ".matrix", dim);
    }
    if (v.contains("scale")) {
        term.op = as_number(v["scale"], path + ".scale") * term.op;
    }
    if (v.contains("coeff")) {
        const json& c = v["coeff"];
        if (!c.is_number_unsigned()) schema_error(path + ".coeff", "expected an index >= 0");
        term.coeff_index = static_cast<int>(c.get<std::uint64_t>());
    }
    return term;
}

Schedule parse_schedule(const json& v, const std::string& path) {
    if (!v.is_object()) schema_error(path, "expected an object");
    require_keys(v, path, {"breakpoints", "values"});
    Schedule s;
    const json& bps = require_field(v, path, "breakpoints");
    if (!bps.is_array() || bps.size() < 2) {
        schema_error(path + ".breakpoints", "expected at least two times");
    }
    for (std::size_t i = 0; i < bps.size(); ++i) {
        const double t = as_number(bps[i], path + ".breakpoints[" + std::to_string(i) + "]");
        if (i > 0 && !(t > s.breakpoints.back())) {
            schema_error(path + ".breakpoints[" + std::to_string(i) + "]",
                         "breakpoints must be strictly increasing");
        }
        s.breakpoints.push_back(t);
    }
    const json& values = require_field(v, path, "values");
    if (!values.is_array() || values.size() != s.breakpoints.size() - 1) {
        schema_error(path + ".values", "expected one row per segment (breakpoints - 1)");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string row_path = path + ".values[" + std::to_string(i) + "]";
        if (!values[i].is_array()) schema_error(row_path, "expected an array");
        std::vector<double> row;
        for (std::size_t j = 0; j < values[i].size(); ++j) {
            row.push_back(as_number(values[i][j], row_path + "[" + std::to_string(j) + "]"));
        }
        s.segment_values.push_back(std::move(row));
    }
    return s;
}

BoundRequest parse_bounds(const json& v, const std::string& path) {
    if (!v.is_array()) schema_error(path, "expected an array of bound names");
    BoundRequest req{false, false, false, false, false};
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string item_path = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_string()) schema_error(item_path, "expected a string");
        const std::string name = v[i].get<std::string>();
        if (name == "hilbert") req.hilbert = true;
        else if (name == "liouville") req.liouville = true;
        else if (name == "deviation") req.deviation = true;
        else if (name == "dephasing_floor") req.dephasing_floor = true;
        else if (name == "entropy_floor") req.entropy_floor = true;
        else schema_error(item_path, "unknown bound '" + name + "'");
    }
    return req;
}

SteadyStrategy parse_steady_name(const std::string& name, const std::string& path) {
    if (name == "maximally_mixed") return SteadyStrategy::maximally_mixed;
    if (name == "dephased_diagonal") return SteadyStrategy::dephased_diagonal;
    if (name == "kernel") return SteadyStrategy::kernel;
    if (name == "long_time") return SteadyStrategy::long_time;
    schema_error(path, "unknown steady-state strategy '" + name + "'");
}

} // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw SchemaError("$: config must be a JSON object");

    require_keys(root, "$",
                 {"dim", "hamiltonian", "lindblad", "schedule", "initial", "grid", "bounds",
                  "steady_state", "output"});

    const std::size_t dim = as_positive_integer(require_field(root, "$", "dim"), "$.dim");

    std::vector<OperatorTerm> ham_terms;
    if (root.contains("hamiltonian")) {
        const json& h = root["hamiltonian"];
        if (!h.is_array()) schema_error("$.hamiltonian", "expected an array of terms");
        for (std::size_t i = 0; i < h.size(); ++i) {
            ham_terms.push_back(parse_term(h[i], "$.hamiltonian[" + std::to_string(i) + "]", dim));
        }
    }
    std::vector<OperatorTerm> lindblad_terms;
    if (root.contains("lindblad")) {
        const json& l = root["lindblad"];
        if (!l.is_array()) schema_error("$.lindblad", "expected an array of terms");
        for (std::size_t i = 0; i < l.size(); ++i) {
            lindblad_terms.push_back(
                parse_term(l[i], "$.lindblad[" + std::to_string(i) + "]", dim));
        }
    }

    std::optional<Schedule> schedule;
    if (root.contains("schedule")) {
        schedule = parse_schedule(root["schedule"], "$.schedule");
    }

    LindbladModel model(dim, std::move(ham_terms), std::move(lindblad_terms),
                        std::move(schedule));

    const json& initial = require_field(root, "$", "initial");
    if (!initial.is_object()) schema_error("$.initial", "expected an object");
    require_keys(initial, "$.initial", {"matrix", "sampler", "seed", "count"});

    std::optional<Matrix> initial_matrix;
    std::optional<SamplerConfig> initial_sampler;
    std::size_t initial_count = 1;
    std::uint64_t seed = 0;
    if (initial.contains("matrix") == initial.contains("sampler")) {
        schema_error("$.initial", "exactly one of 'matrix' or 'sampler' is required");
    }
    if (initial.contains("matrix")) {
        initial_matrix = parse_matrix(initial["matrix"], "$.initial.matrix", dim);
        validate_density(*initial_matrix);
    } else {
        const json& sampler = initial["sampler"];
        if (!sampler.is_string()) schema_error("$.initial.sampler", "expected a string");
        SamplerConfig cfg;
        cfg.kind = sampler_kind_from_name(sampler.get<std::string>());
        if (cfg.kind != SamplerKind::haar_pure && cfg.kind != SamplerKind::ginibre_density) {
            schema_error("$.initial.sampler", "sampler must produce states");
        }
        cfg.dim = dim;
        if (initial.contains("seed")) {
            const json& s = initial["seed"];
            if (!s.is_number_unsigned()) schema_error("$.initial.seed", "expected an unsigned integer");
            cfg.seed = s.get<std::uint64_t>();
        }
        seed = cfg.seed;
        if (initial.contains("count")) {
            initial_count = as_positive_integer(initial["count"], "$.initial.count");
        }
        initial_sampler = cfg;
    }

    const json& grid_json = require_field(root, "$", "grid");
    if (!grid_json.is_object()) schema_error("$.grid", "expected an object");
    require_keys(grid_json, "$.grid", {"t_start", "t_end", "dt", "sample_stride"});
    TimeGrid grid;
    grid.t_start = as_number(require_field(grid_json, "$.grid", "t_start"), "$.grid.t_start");
    grid.t_end = as_number(require_field(grid_json, "$.grid", "t_end"), "$.grid.t_end");
    if (grid_json.contains("dt")) grid.dt = as_number(grid_json["dt"], "$.grid.dt");
    if (grid_json.contains("sample_stride")) {
        grid.sample_stride = as_positive_integer(grid_json["sample_stride"], "$.grid.sample_stride");
    }
    if (!(grid.t_end > grid.t_start)) schema_error("$.grid.t_end", "must exceed t_start");
    if (!(grid.dt > 0.0)) schema_error("$.grid.dt", "must be positive");

    BoundRequest bounds;
    if (root.contains("bounds")) bounds = parse_bounds(root["bounds"], "$.bounds");

    std::optional<SteadyStrategy> steady;
    std::optional<Matrix> steady_matrix;
    if (root.contains("steady_state")) {
        const json& s = root["steady_state"];
        if (s.is_string()) {
            steady = parse_steady_name(s.get<std::string>(), "$.steady_state");
        } else if (s.is_object()) {
            require_keys(s, "$.steady_state", {"matrix"});
            steady = SteadyStrategy::user_supplied;
            steady_matrix =
                parse_matrix(require_field(s, "$.steady_state", "matrix"), "$.steady_state.matrix", dim);
        } else {
            schema_error("$.steady_state", "expected a strategy name or {\"matrix\": ...}");
        }
    }

    std::string output;
    if (root.contains("output")) {
        if (!root["output"].is_string()) schema_error("$.output", "expected a string");
        output = root["output"].get<std::string>();
    }

    return RunConfig{std::move(model),
                     std::move(initial_matrix),
                     initial_sampler,
                     initial_count,
                     grid,
                     bounds,
                     steady,
                     std::move(steady_matrix),
                     std::move(output),
                     csv::fnv1a64(text),
                     seed};
}

} // namespace lindblad
