#include "jsonio.hpp"

#include <filesystem>
#include <fstream>

namespace io {

namespace fs = std::filesystem;
using alg::Algebra;
using gfp::Mat;

namespace {

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(int(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat mat_from_json(const json& j, int p) {
    if (!j.is_array()) throw std::invalid_argument("matrix: expected array of rows");
    int rows = static_cast<int>(j.size());
    int cols = rows ? static_cast<int>(j[0].size()) : 0;
    Mat m(rows, cols, p);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols) throw std::invalid_argument("matrix: ragged rows");
        for (int c = 0; c < cols; ++c) m.set(r, c, j[r][c].get<int>());
    }
    return m;
}

std::vector<uint8_t> vec_from_json(const json& j, int p) {
    std::vector<uint8_t> v;
    for (const auto& x : j) v.push_back(static_cast<uint8_t>(gfp::norm(x.get<int>(), p)));
    return v;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

std::string resolve(const std::string& base_file, const std::string& ref) {
    fs::path p(ref);
    if (p.is_absolute()) return ref;
    return (fs::path(base_file).parent_path() / p).string();
}

}  // namespace

json algebra_to_json(const Algebra& a) {
    json mul = json::array();
    for (int i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < a.dim(); ++j) {
            json entry = json::array();
            for (int k = 0; k < a.dim(); ++k) entry.push_back(int(a.table()[i][j][k]));
            row.push_back(std::move(entry));
        }
        mul.push_back(std::move(row));
    }
    json unit = json::array();
    for (uint8_t c : a.unit_coords()) unit.push_back(int(c));
    return json{{"p", a.p()}, {"dim", a.dim()}, {"unit", unit}, {"mul", mul}};
}

Algebra algebra_from_json(const json& j) {
    int p = j.at("p").get<int>();
    int dim = j.at("dim").get<int>();
    const json& mul = j.at("mul");
    if (static_cast<int>(mul.size()) != dim) throw std::invalid_argument("algebra: mul table shape");
    std::vector<std::vector<std::vector<uint8_t>>> table;
    for (const auto& row : mul) {
        std::vector<std::vector<uint8_t>> trow;
        for (const auto& e : row) trow.push_back(vec_from_json(e, p));
        table.push_back(std::move(trow));
    }
    return Algebra::from_table(p, dim, std::move(table), vec_from_json(j.at("unit"), p));
}

json module_to_json(const fdmod::Module& m, const std::string& algebra_ref) {
    json act = json::array();
    for (int i = 0; i < m.algebra().dim(); ++i) act.push_back(mat_to_json(m.action(i)));
    return json{{"algebra", algebra_ref}, {"dim", m.dim()}, {"action", act}};
}

json ring_to_json(const evr::Ring& r, const std::string& t_ref, const std::string& s_ref) {
    return json{{"T", t_ref}, {"S", s_ref}, {"iota", mat_to_json(r.iota().matrix())}};
}

json elem_to_json(const evr::Elem& e) {
    json head = json::array();
    for (const Mat& h : e.head()) {
        json hv = json::array();
        for (int c = 0; c < h.cols(); ++c) hv.push_back(int(h.at(0, c)));
        head.push_back(std::move(hv));
    }
    json tail = json::array();
    for (int c = 0; c < e.tail().cols(); ++c) tail.push_back(int(e.tail().at(0, c)));
    return json{{"head", head}, {"tail", tail}};
}

evr::Elem elem_from_json(const evr::Ring& r, const json& j) {
    std::vector<Mat> head;
    for (const auto& h : j.at("head"))
        head.push_back(Mat::row_vector(vec_from_json(h, r.t_algebra().p()), r.t_algebra().p()));
    Mat tail = Mat::row_vector(vec_from_json(j.at("tail"), r.s_algebra().p()), r.s_algebra().p());
    return r.from_raw(std::move(head), std::move(tail));
}

json fp_module_to_json(const evm::FpModule& m, const std::string& ring_ref) {
    json pres = json::array();
    for (int r = 0; r < m.gens(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.presentation().cols(); ++c) row.push_back(elem_to_json(m.presentation().at(r, c)));
        pres.push_back(std::move(row));
    }
    return json{{"ring", ring_ref}, {"gens", m.gens()}, {"presentation", pres}};
}

alg::Algebra load_algebra(const std::string& path) { return algebra_from_json(read_file(path)); }

fdmod::Module load_module(const std::string& path) {
    json j = read_file(path);
    Algebra a = load_algebra(resolve(path, j.at("algebra").get<std::string>()));
    int dim = j.at("dim").get<int>();
    std::vector<Mat> act;
    for (const auto& m : j.at("action")) act.push_back(mat_from_json(m, a.p()));
    return fdmod::Module::from_action(a, dim, std::move(act));
}

evr::Ring load_ring(const std::string& path) {
    json j = read_file(path);
    Algebra t = load_algebra(resolve(path, j.at("T").get<std::string>()));
    Algebra s = load_algebra(resolve(path, j.at("S").get<std::string>()));
    Mat iota = mat_from_json(j.at("iota"), s.p());
    return evr::Ring::create(t, s, alg::Morphism(s, t, iota));
}

evm::FpModule load_fp_module(const std::string& path) {
    json j = read_file(path);
    evr::Ring r = load_ring(resolve(path, j.at("ring").get<std::string>()));
    int gens = j.at("gens").get<int>();
    const json& pres = j.at("presentation");
    if (static_cast<int>(pres.size()) != gens) throw std::invalid_argument("fp-module: presentation rows != gens");
    int cols = gens ? static_cast<int>(pres[0].size()) : 0;
    std::vector<evr::Elem> entries;
    for (const auto& row : pres) {
        if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("fp-module: ragged presentation");
        for (const auto& e : row) entries.push_back(elem_from_json(r, e));
    }
    return evm::FpModule::create(r, gens, evm::EvMat(r, gens, cols, std::move(entries)));
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

FileReport check_file(const std::string& path) {
    FileReport rep;
    rep.path = path;
    try {
        json j = read_file(path);
        if (j.contains("mul")) {
            rep.kind = "algebra";
            load_algebra(path);
        } else if (j.contains("action")) {
            rep.kind = "module";
            load_module(path);
        } else if (j.contains("iota")) {
            rep.kind = "ring";
            load_ring(path);
        } else if (j.contains("presentation")) {
            rep.kind = "fp-module";
            load_fp_module(path);
        } else {
            rep.kind = "unknown";
            throw std::invalid_argument("unrecognized definition file");
        }
        rep.ok = true;
    } catch (const std::exception& e) {
        rep.ok = false;
        rep.error = e.what();
    }
    return rep;
}

}  // namespace io
