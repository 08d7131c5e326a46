#ifndef EVCOVER_JSONIO_HPP
#define EVCOVER_JSONIO_HPP

#include <string>

#include "evmodule.hpp"
#include "json.hpp"

/// Definition-file formats. Loaders route everything through the library
/// constructors, so every invariant is re-validated on load. File references
/// inside a definition resolve relative to the referencing file.
namespace io {

using nlohmann::json;

json algebra_to_json(const alg::Algebra& a);
alg::Algebra algebra_from_json(const json& j);

json module_to_json(const fdmod::Module& m, const std::string& algebra_ref);
json ring_to_json(const evr::Ring& r, const std::string& t_ref, const std::string& s_ref);

json elem_to_json(const evr::Elem& e);
evr::Elem elem_from_json(const evr::Ring& r, const json& j);

json fp_module_to_json(const evm::FpModule& m, const std::string& ring_ref);

alg::Algebra load_algebra(const std::string& path);
fdmod::Module load_module(const std::string& path);
evr::Ring load_ring(const std::string& path);
evm::FpModule load_fp_module(const std::string& path);

void save_json(const std::string& path, const json& j);

struct FileReport {
    std::string path;
    std::string kind;  // algebra | module | ring | fp-module | unknown
    bool ok = false;
    std::string error;
};
FileReport check_file(const std::string& path);

}  // namespace io

#endif
