#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "scai/corpus.hpp"
#include "scai/error.hpp"

namespace scai::test {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(SCAI_TEST_DATA_DIR) / "fixtures" / name;
}

inline std::filesystem::path golden(const std::string& name) {
    return std::filesystem::path(SCAI_TEST_DATA_DIR) / "golden" / name;
}

inline Corpus jsonl(const std::string& text) {
    std::istringstream in(text);
    return parse_corpus(in, CorpusFormat::Jsonl);
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("scai-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string researcher(const std::string& id, const std::string& name,
                              const std::string& extra = "") {
    return R"({"kind":"researcher","id":")" + id + R"(","names":[")" + name +
           R"("],"discipline":"ComputerScience")" + extra + "}\n";
}

inline std::string publication(const std::string& id, int year, const std::string& authors_json) {
    return R"({"kind":"publication","id":")" + id + R"(","title":"t","year":)" +
           std::to_string(year) + R"(,"authors":)" + authors_json +
           R"(,"discipline":"ComputerScience"})" "\n";
}

inline std::string citation(const std::string& citing, const std::string& cited) {
    return R"({"kind":"citation","citing":")" + citing + R"(","cited":")" + cited + "\"}\n";
}

template <class F>
ErrorCode error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::logic_error("expected scai::Error");
}

}  // namespace scai::test
