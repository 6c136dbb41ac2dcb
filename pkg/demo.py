from sgx import Toolkit

kit = Toolkit()

# 建構 Γ_{2,8}
doc = kit.construct("gamma", s=2, n=8)
print(doc["sg6"])

# 特徵值與 index
spec = kit.spectrum(doc["sg6"])
print(f"λ1 = {spec['index']:.9f}")

# tK4^- -free 判定（t = 2）
print(kit.check(doc["sg6"], "tk4_free(2)"))

# 結構報告
print(kit.structure(doc["sg6"], 2))

# n = 5 的極值搜尋與憑證驗證
cert = kit.search(n=5)
print(cert["witness"], cert["best_value"])
print(kit.verify_certificate(cert))
