#ifndef X0N_PIPELINE_HPP
#define X0N_PIPELINE_HPP

#include "x0n/jrep.hpp"
#include "x0n/relations.hpp"
#include "x0n/search.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace x0n {

enum class Stage { Generators, Equation, Relations, Killers, JRep };
std::string to_string(Stage s);

class PipelineError : public std::runtime_error {
public:
    PipelineError(Stage stage, const std::string& what, const std::string& remedy);
    Stage stage() const { return stage_; }
    const std::string& remedy() const { return remedy_; }

private:
    Stage stage_;
    std::string remedy_;
};

struct PipelineConfig {
    int N = 0;
    int precision_guard = kDefaultGuard;
    SearchBounds bounds;
    bool use_paper_generators = false;
    bool normalize_paper_signs = true;  // rescale a table generator whose leading coefficient is -1
    bool emit_collapsed_RN = false;     // always on for g <= 2
    KillerPolicy policy = KillerPolicy::FirstGenerator;
    std::string generators_file;        // load instead of searching
    std::string data_dir;               // table records (empty: default_data_dir())
    std::string output_path;
    void validate() const;
};

/// Transcribed table data for one level. Polynomials are kept as text in the
/// table's own variable names (X, Y or F1, F2, ...).
struct PaperExpansion {
    int F = 0;
    int D = 1;
    int val = 0;
    std::vector<std::string> coeffs;
};
struct PaperPoint {
    std::string x, y, j;
};
struct PaperRecord {
    int N = 0;
    int g = 0;
    std::vector<std::string> functions;
    std::string equation;
    std::vector<std::string> R_num;  // coefficient of Y^k (only Y^0 for g = 0)
    std::string R_den;
    // worked examples
    std::vector<std::string> worked_functions;
    std::string worked_equation;
    std::vector<PaperExpansion> expansions;
    std::vector<PaperPoint> j_values, cusp_points;
    std::string J_A, J_B, J_den;
    std::vector<std::string> relations;
    std::string Delta;
    std::map<int, std::string> U, C;
    std::string killer_denominator;
};

std::string default_data_dir();
bool has_paper_record(int N, const std::string& dir = "");
PaperRecord load_paper_record(int N, const std::string& dir = "");

struct PipelineResult {
    int N = 0;
    int g = 0;
    GeneratorSystem gens;
    std::vector<std::string> notes;
    std::optional<BivarPoly> equation;
    std::vector<RelationRow> rows;
    std::optional<RationalRep> H;
    std::optional<JRepresentation> J;
    std::vector<std::pair<Stage, double>> seconds;
};

/// Generators (table, file or search) -> minimal equation -> relation rows and
/// H_i (g >= 2) -> killers and J. Each stage checks its residuals first.
PipelineResult run(const PipelineConfig& cfg, Stage last = Stage::JRep);

/// Generator system from the table record: parsed, completed by search when
/// the table lists only F1, F2, optionally sign-normalized. Notes say what
/// was changed.
GeneratorSystem paper_generators(const PaperRecord& rec, const SearchBounds& bounds, bool normalize,
                                 std::vector<std::string>& notes);

struct DiffReport {
    std::vector<std::string> matched;
    std::vector<std::string> diffs;
    bool ok() const { return diffs.empty(); }
};

/// Exact comparison against every item the record holds: equation (up to a
/// scalar), R_N by cross-multiplication, worked-example data.
DiffReport verify_against_paper(const PipelineResult& result, const PaperRecord& rec);

/// Generator files: {"N":14,"g":1,"functions":["T[5,1,2,1]", ...]}.
GeneratorSystem load_generator_file(const std::string& path);
void save_generator_file(const GeneratorSystem& sys, const std::string& path);
std::string generator_json(const GeneratorSystem& sys);

std::string series_json(const CSeries& s, int N, int D);
std::string cusps_json(int N);
std::string jrep_json(const PipelineResult& r);

/// Variable names X, Y, F3, ... used for output.
std::vector<std::string> output_names(int count);

}  // namespace x0n

#endif  // X0N_PIPELINE_HPP
