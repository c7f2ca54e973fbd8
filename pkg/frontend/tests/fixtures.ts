// Captured solve-service responses (verbatim body text) used as
// canned outcomes in unit tests.  Regenerate by POSTing the scenes
// in comments to /v1/solve.

// s_shape circles (10,7,r=5) and (0,0,r=2), alpha0 0.32, branch left
export const S_DEMO_RAW = "{\"entries\":[{\"alpha0\":0.32,\"b0\":[2.8571428571428568,2.0],\"f1\":[-0.721938570280846,-0.6919571523879555],\"feasible\":true,\"residuals\":{\"contacts\":[{\"curvature\":3.885780586188048e-16,\"position\":8.064660050877137e-13,\"tangent\":1.0439649145153589e-12},{\"curvature\":1.6653345369377348e-16,\"position\":3.228528555609955e-13,\"tangent\":1.04455333271841e-12}],\"junction_curvatures\":[-1.42288081399579e-17,-5.3728572403486854e-17],\"junction_gap\":0.0,\"junction_tangent_dot\":-0.9999999999999999},\"spirals\":[[[2.8571428571428568,2.0],[6.3655680268109505,1.6346159190698755],[9.593319182905596,1.2984625646141608],[11.950662638607646,1.9438564642691314],[13.459785761944104,3.3903071485988017]],[[2.8571428571428568,2.0],[1.4537727892756191,2.14615363237205],[0.16267232683776078,2.280614974154336],[-0.7802650554430589,2.0224574142923473],[-1.3839143047776425,1.4438771405604789]]],\"t0\":[0.9946206544404995,-0.10358452471461473],\"t1\":[0.721938570280846,0.6919571523879555],\"theta\":0.8679671754230804}],\"scene\":{\"alpha0\":[0.32],\"branch\":\"left\",\"circles\":[{\"center\":[10.0,7.0],\"radius\":5.0},{\"center\":[0.0,0.0],\"radius\":2.0}],\"kind\":\"s_shape\",\"schema\":\"spiralkit-scene/1\"},\"schema\":\"spiralkit-result/1\"}" + "\n";

// s_shape circles (4,0,r=5) and (0,0,r=2): overlapping, infeasible
export const S_OVERLAP_RAW = "{\"entries\":[{\"alpha0\":0.32,\"feasible\":false,\"reason\":\"circles must be strictly separated: needs r0 + r1 < ||C1 - C0||, got r0 + r1 = 7 with center distance 4\"}],\"scene\":{\"alpha0\":[0.32],\"branch\":\"left\",\"circles\":[{\"center\":[4.0,0.0],\"radius\":5.0},{\"center\":[0.0,0.0],\"radius\":2.0}],\"kind\":\"s_shape\",\"schema\":\"spiralkit-scene/1\"},\"schema\":\"spiralkit-result/1\"}" + "\n";
