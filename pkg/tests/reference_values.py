"""Values as printed in the source, for tests that compare against them."""

# rank 2 equivalence classes of exceptional quotients, by family
RANK2_EXCEPTIONAL = {
    "1(i)": ["E6^16"],
    "1(ii)": ["E6^12", "E6^13", "E6^26", "E6^56", "E7^17", "E7^67"],
    "1(iii)": ["E6^24", "E7^13", "E8^78", "F4^12", "G2^12"],
    "2(i)": ["E6^15", "E6^23", "E6^25", "E6^36", "E7^12", "E7^27"],
    "2(ii)": ["E7^16", "E8^18", "F4^14"],
    "2(iii)": ["E6^14", "E6^34", "E6^35", "E6^45", "E6^46", "E7^23", "E7^26", "E7^37", "E7^56", "E7^57"],
    "2(iv)": ["E7^15", "E7^24", "E7^25", "E8^12", "E8^13", "E8^28"],
    "2(v)": ["E7^14", "E7^34", "E7^36", "E8^17", "E8^67", "E8^68", "F4^13", "F4^23", "F4^24"],
    "2(vi)": ["E7^46", "E8^16", "F4^34"],
    "2(vii)": ["E8^15", "E8^25"],
    "2(viii)": ["E8^14", "E8^34", "E8^37", "E8^57"],
    "3(i)": ["E7^35", "E7^45", "E7^47"],
    "3(ii)": ["E8^23", "E8^27", "E8^38"],
    "3(iii)": ["E8^24", "E8^26", "E8^56", "E8^58"],
    "3(iv)": ["E8^46", "E8^47"],
    "4": ["E8^35", "E8^36", "E8^45", "E8^48"],
}


def rank2_classical(family: str, l: int, i: int, j: int) -> str | None:
    """Family of X_l^{i,j} by the printed rules for classical systems.

    Two printed ranges overlap with other entries; the bounds used here
    are the ones that make the list a partition: D_l^{1,j} is 2(i) for
    j <= l-2 and D_l^{i,i+1} is 2(i) for i <= l-3.
    """
    if family == "A":
        return "1(i)"
    if family == "B":
        if (i, j) == (1, 2):
            return "1(ii)"
        if j == i + 1 or i == 1:
            return "2(i)"
        return "2(ii)"
    if family == "C":
        return "1(ii)" if j == l else "2(ii)"
    if family == "D":
        if (i, j) in ((1, l - 1), (1, l), (l - 1, l)):
            return "1(i)"
        if (i, j) == (1, 2) or (2 <= i <= l - 2 and j >= l - 1):
            return "1(ii)"
        if i == 1 and 3 <= j <= l - 2:
            return "2(i)"
        if 2 <= i <= l - 3 and j == i + 1:
            return "2(i)"
        if i >= 2 and i + 2 <= j <= l - 2:
            return "2(ii)"
    return None


# highest root of F4 in Bourbaki coordinates and of three of its rank 2 quotients
F4_HIGHEST = (2, 3, 4, 2)
F4_QUOTIENT_HIGHEST = {(1, 3): (2, 4), (2, 3): (3, 4), (2, 4): (3, 2)}

# bases of reduced rank 2 systems, opposites included
REDUCED_BASE_COUNTS = {"1(i)": 6, "1(ii)": 8, "1(iii)": 12}

# F4 keeping {2, 4}
F4_24_ROOTS = 17
F4_24_GRAM = {"n2": "1", "n4": "3/2", "ip": "-1"}

# theta-move E8 J = {1, 6, 8} at pivot 8
E8_THETA = ((1, 6, 8), 8, (1, 6, 7))
