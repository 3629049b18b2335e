//! Float methods for builds without `std`.
//!
//! With `std` the inherent `f64` methods are used and this module is empty.
//! Without it the same method names are provided by `libm`.

#![allow(missing_docs)]

macro_rules! define_float_funcs {
    ($(fn $name:ident(self $(,$arg:ident: $arg_ty:ty)*) -> $ret:ty => $lname:ident;)+) => {
        #[cfg(not(feature = "std"))]
        pub(crate) trait FloatFuncs: Sized {
            $(fn $name(self $(,$arg: $arg_ty)*) -> $ret;)+

            fn powi(self, n: i32) -> f64;
        }

        #[cfg(not(feature = "std"))]
        impl FloatFuncs for f64 {
            $(
                #[inline]
                fn $name(self $(,$arg: $arg_ty)*) -> $ret {
                    #[cfg(feature = "libm")]
                    return libm::$lname(self $(,$arg)*);

                    #[cfg(not(feature = "libm"))]
                    compile_error!("bishop-ruled requires either the `std` or `libm` feature")
                }
            )+

            #[inline]
            fn powi(self, n: i32) -> f64 {
                self.powf(n as f64)
            }
        }
    };
}

define_float_funcs! {
    fn sqrt(self) -> f64 => sqrt;
    fn cbrt(self) -> f64 => cbrt;
    fn sin(self) -> f64 => sin;
    fn cos(self) -> f64 => cos;
    fn atan2(self, other: f64) -> f64 => atan2;
    fn floor(self) -> f64 => floor;
    fn round(self) -> f64 => round;
    fn hypot(self, other: f64) -> f64 => hypot;
    fn powf(self, n: f64) -> f64 => pow;
}
