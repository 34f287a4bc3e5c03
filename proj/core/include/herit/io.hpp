#ifndef HERIT_IO_HPP
#define HERIT_IO_HPP

#include <string>
#include <vector>

#include "herit/types.hpp"

namespace herit {

// Genotype CSV: header row of SNP identifiers, one row of {0,1,2} per
// individual. Parse errors report 1-based line/column of the bad cell.
void write_genotypes_csv(const std::string& path, const GenotypeMatrix& w,
                         const std::vector<std::string>& snp_ids);
GenotypeMatrix read_genotypes_csv(const std::string& path,
                                  std::vector<std::string>* snp_ids = nullptr);

// Phenotype CSV: single header + one value per individual.
void write_phenotype_csv(const std::string& path, const Vector& y,
                         const std::string& name = "phenotype");
Vector read_phenotype_csv(const std::string& path);

// Covariate CSV: header + one column per covariate.
void write_covariates_csv(const std::string& path, const Matrix& x,
                          const std::vector<std::string>& names);
Matrix read_covariates_csv(const std::string& path);

std::vector<std::string> default_snp_ids(Index n_snps);

}  // namespace herit

#endif
